#include <catch2/catch_amalgamated.hpp>

#include "evgrid/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace evgrid;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int simulate(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_simulate(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("simulate writes reports and honours overrides", "[cli]") {
    TempDir tmp("evgrid_cli_ok");
    write(tmp.path / "scenario.txt", "seed=5\npenetration=0.2\n");
    write(tmp.path / "topology.txt", "total_houses=40\n");
    std::string out;
    const int code = simulate({"--scenario", (tmp.path / "scenario.txt").string(), "--topology",
                               (tmp.path / "topology.txt").string(), "--schedules",
                               EVGRID_DATA_DIR "/schedules_winter.csv", "--out", (tmp.path / "out").string(),
                               "--penetration", "0.5", "--penetration", "0.1", "--coordinated", "--ev-trace",
                               "--control-log", "--grid-dump"},
                              &out);
    INFO(out);
    REQUIRE(code == kExitOk);
    CHECK(fs::exists(tmp.path / "out" / "overload_summary.csv"));
    CHECK(fs::exists(tmp.path / "out" / "normalized_heatmap_0.5_coordinated.csv"));
    CHECK(fs::exists(tmp.path / "out" / "average_output_0.1_coordinated.csv"));
    CHECK(fs::exists(tmp.path / "out" / "ev_trace_0.5_coordinated.csv"));
    CHECK(fs::exists(tmp.path / "out" / "control_log_0.5_coordinated.csv"));
    CHECK(fs::exists(tmp.path / "out" / "grid_0.1_coordinated.csv"));
    CHECK_FALSE(fs::exists(tmp.path / "out" / "normalized_heatmap_0.2.csv"));
}

TEST_CASE("simulate runs on defaults for a small topology", "[cli]") {
    TempDir tmp("evgrid_cli_defaults");
    write(tmp.path / "topology.txt", "total_houses=20\n");
    CHECK(simulate({"--topology", (tmp.path / "topology.txt").string(), "--out", (tmp.path / "o").string(),
                    "--seed", "9"}) == kExitOk);
    CHECK(fs::exists(tmp.path / "o" / "normalized_heatmap_0.csv"));
}

TEST_CASE("simulate exit codes", "[cli]") {
    TempDir tmp("evgrid_cli_errors");
    write(tmp.path / "bad.txt", "penetration=1.5\n");
    std::string err;
    CHECK(simulate({"--scenario", (tmp.path / "bad.txt").string(), "--out", tmp.path.string()}, nullptr, &err) ==
          kExitValidation);
    CHECK(err.find("penetration") != std::string::npos);

    CHECK(simulate({"--out", tmp.path.string(), "--penetration", "2"}) == kExitValidation);
    CHECK(simulate({"--penetration", "0.1"}) == kExitValidation);
    CHECK(simulate({"--out", tmp.path.string(), "--bogus"}) == kExitValidation);

    CHECK(simulate({"--scenario", (tmp.path / "missing.txt").string(), "--out", tmp.path.string()}) == kExitIo);

    write(tmp.path / "file", "x");
    write(tmp.path / "topology.txt", "total_houses=10\n");
    CHECK(simulate({"--topology", (tmp.path / "topology.txt").string(), "--out",
                    (tmp.path / "file" / "sub").string()}) == kExitIo);

    std::string help;
    CHECK(simulate({"--help"}, &help) == kExitOk);
    CHECK(help.find("--penetration") != std::string::npos);
}

TEST_CASE("simulate binary maps validation errors to exit status 1", "[cli]") {
    TempDir tmp("evgrid_cli_binary");
    write(tmp.path / "bad.txt", "houses_min=7\nhouses_max=3\n");
    const std::string cmd = std::string(EVGRID_SIMULATE_BIN) + " --topology " + (tmp.path / "bad.txt").string() +
                            " --out " + tmp.path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 1);
}
