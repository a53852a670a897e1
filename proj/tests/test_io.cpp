#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "casimech/cli/scenarios.hpp"
#include "casimech/io/config.hpp"
#include "casimech/io/csv.hpp"
#include "casimech/io/sha256.hpp"

using namespace casimech;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("casimech_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

const char* kScanConfig =
    "[run]\n"
    "scenario = \"resonance_scan\"\n"
    "[mechanical]\n"
    "omega_tilde = 2.0\n"
    "[grid]\n"
    "start = 1.8\n"
    "stop = 2.2\n"
    "points = 11\n"
    "[times]\n"
    "values = [30, 50]\n";

} // namespace

TEST_CASE("sha256 matches the published test vectors") {
    CHECK(io::sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(io::sha256_hex(
              "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("shortest round-trip formatting survives reparsing") {
    for (double v : {0.0, 1.0, -2.5, 1e-5, 3.141592653589793, 6.62607015e-34,
                     -1.7976931348623157e308}) {
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("config parser: sections, values, comments") {
    const auto c = io::parse_config("# top comment\n"
                                    "[run]\n"
                                    "scenario = \"wall_trajectory\"  # tail\n"
                                    "seed = 7\n"
                                    "flag = true\n"
                                    "[times]\n"
                                    "values = [1, 2.5, 3e1]\n");
    CHECK(c.text("run", "scenario") == "wall_trajectory");
    CHECK(c.number("run", "seed") == 7.0);
    CHECK(std::get<bool>(c.get("run", "flag")) == true);
    const auto arr = c.array("times", "values");
    REQUIRE(arr.size() == 3);
    CHECK(arr[2] == 30.0);
    CHECK(c.has("run", "seed"));
    CHECK(!c.has("run", "missing"));
    CHECK(c.number_or("run", "missing", -1.0) == -1.0);
}

TEST_CASE("config parser: malformed input is rejected with a line number") {
    CHECK_THROWS_AS(io::parse_config("[run\n"), io::ConfigError);
    CHECK_THROWS_AS(io::parse_config("[a]\nkey value\n"), io::ConfigError);
    CHECK_THROWS_AS(io::parse_config("[a]\nkey = 12x\n"), io::ConfigError);
    CHECK_THROWS_AS(io::parse_config("[a]\nkey = \"open\n"), io::ConfigError);
    CHECK_THROWS_AS(io::parse_config("[a]\nkey = [1, 2\n"), io::ConfigError);
    try {
        io::parse_config("[a]\nok = 1\nbad = oops\n");
        FAIL("expected ConfigError");
    } catch (const io::ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("run config: canonical serialization round-trips") {
    const cli::RunConfig rc =
        cli::parse_run_config(io::parse_config(kScanConfig));
    const std::string one = cli::serialize_run_config(rc);
    const cli::RunConfig back = cli::parse_run_config(io::parse_config(one));
    CHECK(cli::serialize_run_config(back) == one);
    CHECK(back.scenario == "resonance_scan");
    CHECK(back.grid.points == 11);
    REQUIRE(back.times.size() == 2);
    CHECK(back.times[1] == 50.0);
}

TEST_CASE("run config: validation failures") {
    auto with_points = [](const char* pts) {
        return std::string("[run]\nscenario = \"wall_trajectory\"\n"
                           "[grid]\nstart = 0\nstop = 10\npoints = ") +
               pts + "\n";
    };
    try {
        cli::parse_run_config(io::parse_config(with_points("1")));
        FAIL("expected ConfigError");
    } catch (const io::ConfigError& e) {
        CHECK(std::string(e.what()) == "grid.points must be >= 2");
    }
    CHECK_THROWS_AS(cli::parse_run_config(io::parse_config(
                        "[run]\nscenario = \"no_such_thing\"\n")),
                    io::ConfigError);
    // Log-scale grids need positive bounds.
    CHECK_THROWS_AS(
        cli::parse_run_config(io::parse_config(
            "[run]\nscenario = \"wall_trajectory\"\n"
            "[grid]\nstart = 0\nstop = 10\npoints = 5\nscale = \"log\"\n")),
        io::ConfigError);
}

TEST_CASE("grid values: linear and logarithmic") {
    cli::GridSpec g{1.0, 100.0, 3, false};
    const auto lin = g.values();
    CHECK(lin[1] == Catch::Approx(50.5));
    g.log_scale = true;
    const auto lg = g.values();
    CHECK(lg[1] == Catch::Approx(10.0));
    CHECK(lg.front() == 1.0);
    CHECK(lg.back() == 100.0);
}

TEST_CASE("csv output is byte-identical across runs and thread counts") {
    const cli::RunConfig rc =
        cli::parse_run_config(io::parse_config(kScanConfig));
    const fs::path d1 = temp_dir("csv1"), d2 = temp_dir("csv2"),
                   d4 = temp_dir("csv4");
    cli::run(rc, d1, 1);
    cli::run(rc, d2, 1);
    cli::run(rc, d4, 4);
    const std::string a = slurp(d1 / rc.output);
    CHECK(!a.empty());
    CHECK(a == slurp(d2 / rc.output));
    CHECK(a == slurp(d4 / rc.output));

    // Self-describing header: version and config hash.
    std::istringstream ss(a);
    std::string header, columns;
    std::getline(ss, header);
    std::getline(ss, columns);
    CHECK(header.rfind("# casimech v", 0) == 0);
    const auto pos = header.find("config-sha256=");
    REQUIRE(pos != std::string::npos);
    const std::string sha = header.substr(pos + 14);
    CHECK(sha.size() == 64);
    CHECK(sha == io::sha256_hex(cli::serialize_run_config(rc)));
    CHECK(columns == "omega_tilde,t_tilde,delta_n_beta");
    fs::remove_all(d1);
    fs::remove_all(d2);
    fs::remove_all(d4);
}

TEST_CASE("scenario dispatch rejects inconsistent requests") {
    cli::RunConfig rc = cli::parse_run_config(io::parse_config(kScanConfig));
    rc.times.clear();
    const fs::path d = temp_dir("dispatch");
    CHECK_THROWS_AS(cli::run(rc, d), io::ConfigError);
    fs::remove_all(d);
}

#ifdef CASIMECH_BIN
namespace {

int exit_code_of(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("command line front end maps failures to exit codes") {
    const fs::path d = temp_dir("cli");
    const fs::path good = d / "good.toml";
    std::ofstream(good) << kScanConfig;
    const fs::path broken = d / "broken.toml";
    std::ofstream(broken) << "[run\n";
    const fs::path invalid = d / "invalid.toml";
    // Parses cleanly but fails physics validation (mirror too light).
    std::ofstream(invalid) << "[run]\nscenario = \"wall_trajectory\"\n"
                           << "[mechanical]\nmirror_mass = 1e-40\n"
                           << "[grid]\nstart = 0\nstop = 10\npoints = 5\n";
    const std::string bin = CASIMECH_BIN;

    CHECK(exit_code_of(bin + " resonance_scan --config " + good.string() +
                       " --out " + (d / "out").string()) == 0);
    CHECK(exit_code_of(bin + " resonance_scan --config " + broken.string()) == 1);
    CHECK(exit_code_of(bin + " wall_trajectory --config " + invalid.string()) ==
          2);
    // Scenario on the command line must match the config.
    CHECK(exit_code_of(bin + " force_sweep --config " + good.string()) == 1);
    // Missing config file is a parse-stage failure.
    CHECK(exit_code_of(bin + " resonance_scan --config " +
                       (d / "nope.toml").string()) == 1);
    fs::remove_all(d);
}
#endif
