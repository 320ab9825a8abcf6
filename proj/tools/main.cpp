#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "cellchain/runio.hpp"

namespace fs = std::filesystem;
using namespace cellchain;

namespace {

int cmd_run(const std::string& experiment, const std::string& config_path,
            std::optional<uint64_t> seed, const std::string& out_dir) {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
        cfg = load_config_file(config_path);
    } else if (experiment.size() == 1 && experiment[0] >= 'A' && experiment[0] <= 'D') {
        cfg = ExperimentConfig::preset(experiment[0]);
    } else if (fs::exists(experiment)) {
        cfg = load_config_file(experiment);
    } else {
        std::cerr << "error: '" << experiment
                  << "' is neither an experiment label (A-D) nor a config file\n";
        return 2;
    }
    if (seed) cfg.seed = *seed;

    fs::path dir = out_dir.empty() ? fs::path("runs") / std::string(1, cfg.label)
                                   : fs::path(out_dir);
    auto outcome = run_to_directory(cfg, dir);
    std::cout << "run " << outcome.label << " complete: " << outcome.dir.string() << "\n"
              << "blocks=" << outcome.blocks << " head=" << to_hex(outcome.head_hash)
              << "\n";
    if (outcome.conservation_violations != 0) {
        std::cerr << "error: ball conservation violated "
                  << outcome.conservation_violations << " time(s)\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& dir) {
    auto report = verify_run_directory(dir);
    if (report.ok) {
        std::cout << "valid\n";
        return 0;
    }
    std::cout << report.summary();
    return 1;
}

int cmd_table(const std::vector<std::string>& dirs) {
    std::vector<fs::path> paths(dirs.begin(), dirs.end());
    std::cout << render_table(paths);
    return 0;
}

int cmd_dump_storage(const std::string& dir, const std::string& address) {
    std::cout << replay_storage_dump(dir, address);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ledger-mediated pick-and-place cell testbed"};
    app.require_subcommand(1);

    std::string experiment, config_path, out_dir, verify_dir, dump_dir, address;
    std::optional<uint64_t> seed;
    std::vector<std::string> table_dirs;

    auto* run = app.add_subcommand("run", "run an experiment and write a run directory");
    run->add_option("experiment", experiment,
                    "experiment label A-D or a config file path");
    run->add_option("--config", config_path, "config file (overrides the label)");
    run->add_option("--seed", seed, "override the run seed");
    run->add_option("--out", out_dir, "output directory (default runs/<label>)");

    auto* verify = app.add_subcommand("verify", "verify chain hashes and image anchors");
    verify->add_option("dir", verify_dir, "run directory")->required();

    auto* table = app.add_subcommand("table", "render the velocity table from runs");
    table->add_option("dirs", table_dirs, "run directories")->required();

    auto* dump = app.add_subcommand("dump-storage", "replay the chain and dump storage");
    dump->add_option("dir", dump_dir, "run directory")->required();
    dump->add_option("--address", address, "contract address (default: first deployed)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (experiment.empty() && config_path.empty()) {
                std::cerr << "error: give an experiment label or --config\n";
                return 2;
            }
            return cmd_run(experiment, config_path, seed, out_dir);
        }
        if (verify->parsed()) return cmd_verify(verify_dir);
        if (table->parsed()) return cmd_table(table_dirs);
        if (dump->parsed()) return cmd_dump_storage(dump_dir, address);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
