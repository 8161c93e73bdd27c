#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string cli_path() {
    const char* p = std::getenv("CURVEAVG_CLI");
    REQUIRE_MESSAGE(p != nullptr, "CURVEAVG_CLI must point at the binary");
    return p;
}

int run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string write_config(const std::string& name, const std::string& body) {
    auto dir = std::filesystem::temp_directory_path() / "curveavg_cli_test";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << body;
    return path.string();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p);
    return std::string((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("cli exit codes") {
    auto out = std::filesystem::temp_directory_path() / "curveavg_cli_out";
    std::filesystem::create_directories(out);
    std::string good = write_config(
        "good.json", R"({"curve": {"dim": 2, "components": [[0,1],[0,0,0,1]]}, "window": [-1, 1]})");
    std::string degenerate = write_config(
        "degenerate.json", R"({"curve": {"dim": 2, "components": [[0,1],[0,1]]}})");
    std::string malformed = write_config("malformed.json", "{broken");

    CHECK(run("decompose --config " + good + " --out " + out.string()) == 0);
    CHECK(run("decompose --config " + degenerate + " --out " + out.string()) == 2);
    CHECK(run("decompose --config " + malformed + " --out " + out.string()) == 1);
    CHECK(run("decompose --config /does/not/exist.json") == 1);
    CHECK(run("experiment --config " + good + " --experiment nope --out " + out.string()) == 1);
    CHECK(run("bogus-subcommand") == 1);
    std::filesystem::remove_all(out);
}

TEST_CASE("reruns with identical config and seed are byte identical") {
    auto out1 = std::filesystem::temp_directory_path() / "curveavg_cli_rerun1";
    auto out2 = std::filesystem::temp_directory_path() / "curveavg_cli_rerun2";
    std::string cfg = write_config(
        "rerun.json",
        R"({"curve": {"dim": 2, "components": [[0,1],[0,0,0,1]]}, "window": [-1, 1], "seed": 7})");
    REQUIRE(run("decompose --config " + cfg + " --out " + out1.string()) == 0);
    REQUIRE(run("decompose --config " + cfg + " --out " + out2.string()) == 0);
    CHECK(slurp(out1 / "decomposition.json") == slurp(out2 / "decomposition.json"));

    // hull experiment: CSV + summary also byte-identical, hash embedded
    REQUIRE(run("experiment --config " + cfg + " --experiment hull --out " + out1.string()) == 0);
    REQUIRE(run("experiment --config " + cfg + " --experiment hull --out " + out2.string()) == 0);
    std::string csv1 = slurp(out1 / "hull.csv");
    CHECK(csv1 == slurp(out2 / "hull.csv"));
    CHECK(csv1.rfind("# config_hash=", 0) == 0);

    // a different seed changes the embedded hash
    REQUIRE(run("experiment --config " + cfg + " --experiment hull --seed 8 --out " +
                out2.string()) == 0);
    CHECK(csv1 != slurp(out2 / "hull.csv"));
    std::filesystem::remove_all(out1);
    std::filesystem::remove_all(out2);
}

TEST_CASE("verify runs green on the model parabola") {
    auto out = std::filesystem::temp_directory_path() / "curveavg_cli_verify";
    std::string cfg = write_config(
        "verify.json",
        R"({"curve": {"dim": 2, "components": [[0,1],[0,0,1]]}, "window": [-1, 1],
            "seed": 3, "budget": 4000})");
    CHECK(run("verify --config " + cfg + " --out " + out.string()) == 0);
    std::string rep = slurp(out / "verify_report.json");
    CHECK(rep.find("\"all_pass\": true") != std::string::npos);
    std::filesystem::remove_all(out);
}
