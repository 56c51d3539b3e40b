// relatherm — scenario runner for the moving-probe thermal-bath library.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relatherm/config.hpp"
#include "relatherm/scenarios.hpp"

namespace {

int resolve_threads(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("RELATHERM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relatherm — moving-probe open-system thermodynamics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    long seed = 0;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "run a scenario configuration");
    run->add_option("config", config_path, "path to the configuration file")->required();
    run->add_option("--output", output_dir, "directory for output files");
    run->add_option("--seed", seed, "seed recorded with the dataset");
    run->add_option("--threads", threads,
                    "sweep parallelism (default: RELATHERM_THREADS or 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        const relatherm::Config config = relatherm::Config::from_file(config_path);
        const relatherm::RunOptions options{output_dir, resolve_threads(threads), seed};
        const relatherm::ScenarioResult result = relatherm::run_scenario(config, options);
        std::cout << result.scenario << ": wrote " << result.rows() << " rows to "
                  << result.csv_path << "\n";
        if (!result.summary_path.empty())
            std::cout << "summary: " << result.summary_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return relatherm::exit_code_for(e);
    }
}
