#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "casimech/cli/scenarios.hpp"
#include "casimech/io/config.hpp"
#include "casimech/math_util.hpp"

namespace {

int thread_count(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("CASIMECH_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity optomechanics / dynamical Casimir toolkit"};
    app.set_version_flag("--version", std::string("casimech v") + CASIMECH_VERSION);

    std::string scenario, config_path, out_dir = ".";
    int threads = 0;
    unsigned seed = 0;
    bool seed_given = false;

    app.add_option("scenario", scenario, "scenario to run")->required();
    app.add_option("--config", config_path, "configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads");
    app.add_option("--seed", seed, "ensemble seed override")
        ->each([&](const std::string&) { seed_given = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        std::ifstream in(config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        casimech::cli::RunConfig rc =
            casimech::cli::parse_run_config(casimech::io::parse_config(ss.str()));
        if (rc.scenario != scenario) {
            std::cerr << "error: config field [run] scenario is '" << rc.scenario
                      << "' but the command line asked for '" << scenario << "'\n";
            return 1;
        }
        if (seed_given) rc.seed = seed;
        const auto result =
            casimech::cli::run(rc, out_dir, thread_count(threads));
        for (const auto& w : result.warnings)
            std::cerr << "warning: " << w << "\n";
        for (const auto& p : result.outputs)
            std::cout << p.string() << "\n";
        return 0;
    } catch (const casimech::io::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const casimech::numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
