// End-to-end checks of the command-line tool: exit codes, artifact schema,
// and the determinism contract (identical flags give byte-identical
// artifacts, timestamps aside).

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

#ifndef LINFORM_CLI_PATH
#error "LINFORM_CLI_PATH must be defined by the build"
#endif

const char* cli_path() { return LINFORM_CLI_PATH; }

int run(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("linform_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes: usage, validation, resource, tolerance") {
    CHECK(run("definitely-not-a-subcommand") == 2);
    CHECK(run("--bogus-flag c0") == 2);
    auto dir = fresh_dir("exitcodes");
    CHECK(run("--out " + dir.string() + " s0") == 3); // missing --abs-l1l2
    CHECK(run("--out " + dir.string() + " rkk --k 9 --L 4") == 4);
    CHECK(run("--out " + dir.string() + " c0 --prime-bound 1") == 3);
    // unreachable quadrature tolerance
    CHECK(run("--out " + dir.string() + " kernel-check --t 0 --eta 4 --truncation 2000 --tol 1e-15") == 5);
}

TEST_CASE("manifest is written even on failure") {
    auto dir = fresh_dir("failmanifest");
    CHECK(run("--out " + dir.string() + " rkk --k 9 --L 4") == 4);
    json m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["status"] == "error");
    CHECK(m["subcommand"] == "rkk");
    CHECK(m.contains("error"));
}

TEST_CASE("c0 artifact schema") {
    auto dir = fresh_dir("c0");
    REQUIRE(run("--out " + dir.string() + " c0 --prime-bound 1e5") == 0);
    json j = json::parse(slurp(dir / "c0.json"));
    CHECK(j["schema_version"] == "1");
    CHECK(j["interval"]["lo"].get<std::string>().substr(0, 8) == "0.660161");
    json m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["status"] == "ok");
    CHECK(m["subcommand"] == "c0");
    CHECK(m["parameters"].contains("prime_bound"));
    CHECK(m["outputs"].size() == 1);
}

TEST_CASE("constants table lists the required entries") {
    auto dir = fresh_dir("constants");
    REQUIRE(run("--out " + dir.string() + " constants --prime-bound 1e5") == 0);
    json j = json::parse(slurp(dir / "constants.json"));
    std::vector<std::string> need = {"c0",          "B",  "A1", "C", "C1",
                                     "nu_algebraic", "nu_transcendental", "euler_gamma"};
    for (const auto& name : need) {
        bool found = false;
        for (const auto& e : j["constants"]) {
            if (e["name"] == name) {
                found = true;
                CHECK(!e["provenance"].get<std::string>().empty());
            }
        }
        CHECK_MESSAGE(found, "missing constant ", name);
    }
    CHECK(j["derived"]["C_published"] == "10.0219168340");
    CHECK(j["derived"]["C_conjectural_published"] == "2.5585042082");
    const std::string csv = slurp(dir / "constants.csv");
    CHECK(csv.find("name,lo,hi,precision,provenance") == 0);
    CHECK(csv.find("nu_transcendental") != std::string::npos);
}

TEST_CASE("s0 json and determinism of artifacts") {
    auto d1 = fresh_dir("s0a");
    auto d2 = fresh_dir("s0b");
    const std::string flags =
        " s0 --q1 1 --q2 1 --abs-l1l2 2.449489742783178 --eta 1 --class algebraic";
    REQUIRE(run("--out " + d1.string() + flags) == 0);
    REQUIRE(run("--out " + d2.string() + flags) == 0);
    CHECK(slurp(d1 / "s0.json") == slurp(d2 / "s0.json"));

    json j = json::parse(slurp(d1 / "s0.json"));
    CHECK(j["result"]["s0"].get<long>() >= 3);
    CHECK(j["result"]["denominator_constant"] == "0.83372131685");
    CHECK(j["parsell_published"]["denominator_constant"] == "0.954");

    // manifests agree once timestamps are stripped
    json m1 = json::parse(slurp(d1 / "manifest.json"));
    json m2 = json::parse(slurp(d2 / "manifest.json"));
    for (auto* m : {&m1, &m2}) {
        m->erase("started");
        m->erase("finished");
        (*m)["outputs"] = json::array(); // paths differ by directory
    }
    CHECK(m1 == m2);
}

TEST_CASE("search writes JSONL solutions") {
    auto dir = fresh_dir("search");
    REQUIRE(run("--out " + dir.string() + " search --x 10") == 0);
    const std::string lines = slurp(dir / "solutions.jsonl");
    json first = json::parse(lines.substr(0, lines.find('\n')));
    CHECK(first["p1"] == 2);
    CHECK(first["p2"] == 2);
    CHECK(first["ms"] == json::array({1, 1}));
    json summary = json::parse(slurp(dir / "search.json"));
    CHECK(summary["count"] == 1);
    CHECK(summary["L_clamped"] == true);
}

TEST_CASE("paper-examples reports discrepancies without asserting them away") {
    auto dir = fresh_dir("paper");
    REQUIRE(run("--out " + dir.string() + " paper-examples") == 0);
    json j = json::parse(slurp(dir / "paper_examples.json"));
    REQUIRE(j["instances"].size() == 2);
    for (const auto& inst : j["instances"]) {
        CHECK(inst.contains("computed_s0"));
        CHECK(inst.contains("published_s0"));
        CHECK(inst.contains("discrepancy"));
    }
    CHECK(j["instances"][0]["published_s0"] == 61);
    CHECK(j["instances"][1]["published_s0"] == 119);
    CHECK(j["instances"][0]["published_parsell_s0"] == 267);
}

TEST_CASE("s0 from-config derives the reduced inputs") {
    auto dir = fresh_dir("s0cfg");
    REQUIRE(run("--out " + dir.string() + " s0 from-config --eta 0.5") == 0);
    json j = json::parse(slurp(dir / "s0.json"));
    CHECK(j["result"]["s0"].get<long>() >= 3);
    json m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["parameters"]["eta"] == "0.5");
    CHECK(m["parameters"]["ratio1"] == "3/1");
}

TEST_CASE("factor cache file round-trips through the CLI") {
    auto dir = fresh_dir("fcache");
    const std::string cache = (dir / "factors.txt").string();
    REQUIRE(run("--factor-cache " + cache + " --out " + dir.string() +
                " skl --k 1 --L 12 --prime-bound 1e4") == 0);
    std::ifstream in(cache);
    REQUIRE(in.good());
    std::string line;
    bool saw_2047 = false;
    while (std::getline(in, line)) {
        if (line.rfind("2047 ", 0) == 0) {
            saw_2047 = true;
            CHECK(line == "2047 23^1 89^1");
        }
    }
    CHECK(saw_2047);
    // reload on a second run
    auto dir2 = fresh_dir("fcache2");
    REQUIRE(run("--factor-cache " + cache + " --out " + dir2.string() +
                " skl --k 1 --L 12 --prime-bound 1e4") == 0);
    json m = json::parse(slurp(dir2 / "manifest.json"));
    CHECK(m["versions"]["cache"] == cache);
}

TEST_CASE("every subcommand runs and writes its artifact") {
    struct Case {
        const char* name;
        std::string args;
        const char* artifact;
    };
    const std::vector<Case> cases = {
        {"singular", "singular --n 15 --prime-bound 1e4", "singular.json"},
        {"rkk", "rkk --k 2 --L 4", "rkk.json"},
        {"a-estimate", "a-estimate --k 1 --L 12 --prime-bound 1e4", "a_estimate.json"},
        {"gmeasure", "gmeasure --L 4 --nu 0.8 --tol 1e-5", "gmeasure.json"},
        {"decay", "decay --nu 0.95 --L-min 6 --L-max 8 --tol 1e-7", "decay.csv"},
        {"dissect", "dissect --x 1e6 --epsilon 0.1 --mu-norm 48.828125", "dissect.json"},
        {"major-arc", "major-arc --u 0 --x 100 --eta 0.4 --lambda1 2 --lambda2 -1.5 --epsilon 0.04",
         "major_arc.json"},
        {"integrate", "integrate --region trivial --x 40 --quad-tol 1e-3 --epsilon 0.1 --eta 0.4",
         "integrate.json"},
        {"selberg", "selberg --x 100 --h 5 --epsilon 0.2", "selberg.json"},
        {"twin", "twin --x 20 --epsilon 0.1 --n 1", "twin.json"},
        {"count", "count --x 100", "count.json"},
        {"density", "density --x-grid 50 100", "density.csv"},
    };
    for (const auto& c : cases) {
        auto dir = fresh_dir(std::string("sweep_") + c.name);
        CAPTURE(c.name);
        REQUIRE(run("--out " + dir.string() + " " + c.args) == 0);
        CHECK(fs::exists(dir / c.artifact));
        json m = json::parse(slurp(dir / "manifest.json"));
        CHECK(m["status"] == "ok");
        CHECK(m["subcommand"] == c.name);
    }
}

TEST_CASE("config file merges under explicit flags") {
    auto dir = fresh_dir("config");
    std::ofstream cfg(dir / "run.cfg");
    cfg << "precision=25\n";
    cfg.close();
    REQUIRE(run("--config " + (dir / "run.cfg").string() + " --out " + dir.string() +
                " c0 --prime-bound 1e4") == 0);
    json m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["precision"] == 25);
}

} // TEST_SUITE
