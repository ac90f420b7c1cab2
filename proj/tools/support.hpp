#ifndef LINFORM_TOOLS_SUPPORT_HPP
#define LINFORM_TOOLS_SUPPORT_HPP

#include "linform/interval.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace linform::tools {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kCodeVersion = "0.1.0";

/// One manifest per run: what ran, with which parameters, and what it wrote.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    int precision = 0;
    std::string code_version = kCodeVersion;
    std::string cache_version = "none";
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    std::string status = "ok";
    std::string error;

    nlohmann::json to_json() const;
};

std::string iso8601_now();

/// Writes pretty JSON with a trailing newline; records the path in `manifest`.
void write_json(const std::string& out_dir, const std::string& filename, const nlohmann::json& j,
                RunManifest& manifest);

/// Writes CSV rows (first row = header); records the path in `manifest`.
void write_csv(const std::string& out_dir, const std::string& filename,
               const std::vector<std::vector<std::string>>& rows, RunManifest& manifest);

void write_manifest(const std::string& out_dir, const RunManifest& manifest);

nlohmann::json interval_json(const RealInterval& iv, int decimal_places);

} // namespace linform::tools

#endif
