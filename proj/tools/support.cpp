#include "support.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace linform::tools {

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["subcommand"] = subcommand;
    j["parameters"] = parameters;
    j["precision"] = precision;
    j["versions"] = {{"code", code_version}, {"cache", cache_version}};
    j["started"] = started;
    j["finished"] = finished;
    j["outputs"] = outputs;
    j["status"] = status;
    if (!error.empty()) {
        j["error"] = error;
    }
    return j;
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

void write_text(const std::string& out_dir, const std::string& filename, const std::string& text,
                RunManifest& manifest) {
    std::filesystem::create_directories(out_dir);
    const std::string path = (std::filesystem::path(out_dir) / filename).string();
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
    manifest.outputs.push_back(path);
}

} // namespace

void write_json(const std::string& out_dir, const std::string& filename, const nlohmann::json& j,
                RunManifest& manifest) {
    write_text(out_dir, filename, j.dump(2) + "\n", manifest);
}

void write_csv(const std::string& out_dir, const std::string& filename,
               const std::vector<std::vector<std::string>>& rows, RunManifest& manifest) {
    std::string text;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                text += ',';
            }
            text += row[i];
        }
        text += '\n';
    }
    write_text(out_dir, filename, text, manifest);
}

void write_manifest(const std::string& out_dir, const RunManifest& manifest) {
    std::filesystem::create_directories(out_dir);
    const std::string path = (std::filesystem::path(out_dir) / "manifest.json").string();
    std::ofstream out(path, std::ios::trunc);
    if (out) {
        out << manifest.to_json().dump(2) << "\n";
    }
}

nlohmann::json interval_json(const RealInterval& iv, int decimal_places) {
    return nlohmann::json{{"lo", iv.lo_string(decimal_places)},
                          {"hi", iv.hi_string(decimal_places)},
                          {"lo_double", iv.lo_double()},
                          {"hi_double", iv.hi_double()},
                          {"width", iv.width_double()}};
}

} // namespace linform::tools
