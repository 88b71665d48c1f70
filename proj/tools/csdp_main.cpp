#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "csdp/config.hpp"
#include "csdp/harness.hpp"

namespace {

void print_summary(const csdp::ExperimentReport& r, const std::string& out) {
    std::cout << fmt::format("seed {}: threshold accuracy {:.4f}, argmax accuracy {:.4f}, wrote {}\n",
                             r.seed, r.threshold_accuracy, r.argmax_accuracy, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memristive spiking network trainer"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string weights_path;
    int seeds = 10;
    std::optional<std::uint64_t> base_seed;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    auto* train = app.add_subcommand("train", "Train on the configured truth table and write a report");
    train->add_option("--config", config_path, "Config file")->required();
    train->add_option("--seed", seed, "Seed (defaults to the config's seed)");
    train->add_option("--out", out_dir, "Output directory")->required();

    auto* eval = app.add_subcommand("eval", "Evaluate a weight snapshot");
    eval->add_option("--config", config_path, "Config file")->required();
    eval->add_option("--weights", weights_path, "weights.csv from a previous run")->required();
    eval->add_option("--out", out_dir, "Output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "Train several seeds and tabulate accuracy");
    sweep->add_option("--config", config_path, "Config file")->required();
    sweep->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);
    sweep->add_option("--base-seed", base_seed, "First seed (defaults to the config's seed)");
    sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (train->parsed()) {
            print_summary(csdp::run_experiment(config_path, seed, out_dir), out_dir);
        } else if (eval->parsed()) {
            print_summary(csdp::run_evaluation(config_path, weights_path, out_dir), out_dir);
        } else {
            const auto config = csdp::load_config(config_path);
            const auto rows =
                csdp::run_sweep(config, base_seed.value_or(config.training.seed), seeds, jobs);
            csdp::write_sweep(rows, out_dir);
            int separated = 0;
            for (const auto& r : rows) separated += r.all_separated ? 1 : 0;
            std::cout << fmt::format("{}/{} seeds fully separated, wrote {}\n", separated,
                                     rows.size(), out_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
