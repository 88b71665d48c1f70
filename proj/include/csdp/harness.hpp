#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csdp/config.hpp"
#include "csdp/learning.hpp"
#include "csdp/network.hpp"

namespace csdp {

/// One input/label pairing and the goodness probability of every layer.
struct CombinationResult {
    std::vector<int> input_bits;
    int label = 0;
    Phase phase = Phase::positive;
    std::vector<double> z_p;  ///< one entry per layer
};

struct ExperimentReport {
    std::uint64_t seed = 0;
    std::vector<CombinationResult> combinations;
    std::vector<double> layer_threshold_accuracy;  ///< z_p > 0.5 iff positive, per layer
    double threshold_accuracy = 0.0;               ///< final layer, the headline figure
    double argmax_accuracy = 0.0;                  ///< infer_label over the input patterns
    bool all_separated = false;                    ///< threshold_accuracy == 1
    std::vector<EpochReport> epochs;
    std::string config_echo;
    std::string weights_csv;
};

/// One positive example per truth-table row.
std::vector<Example> positives_from_truth_table(const ExperimentConfig& config);

/// Positives followed by every wrong-label negative.
std::vector<Example> build_dataset(const ExperimentConfig& config);

/// Label maximizing the goodness summed over layers; ties go to the smaller label.
int infer_label(const Network& net, std::span<const int> input_bits);

/// Scores every input/label combination against the truth table.
ExperimentReport evaluate(const Network& net, const ExperimentConfig& config,
                          std::vector<EpochReport> epochs = {}, std::uint64_t seed = 0);

struct TrainingRun {
    Network net;
    std::vector<EpochReport> epochs;
};

/// Seeds one generator with `seed`; it draws the initial weights and then
/// shuffles every epoch.
TrainingRun run_training(const ExperimentConfig& config, std::uint64_t seed);

/// Writes mse.csv, probabilities.csv, weights.csv and report.txt into `out_dir`,
/// creating it if needed. Throws IoError naming the path on failure.
void write_report(const ExperimentReport& report, const std::filesystem::path& out_dir);

/// Loads the config, trains with `seed` (the config's seed when absent),
/// evaluates and writes the report.
ExperimentReport run_experiment(const std::filesystem::path& config_path,
                                std::optional<std::uint64_t> seed,
                                const std::filesystem::path& out_dir);

/// Evaluates a weight snapshot without training.
ExperimentReport run_evaluation(const std::filesystem::path& config_path,
                                const std::filesystem::path& weights_path,
                                const std::filesystem::path& out_dir);

struct SweepRow {
    std::uint64_t seed = 0;
    double threshold_accuracy = 0.0;
    double argmax_accuracy = 0.0;
    bool all_separated = false;
    std::vector<double> first_mse;  ///< per layer; empty when no epochs ran
    std::vector<double> final_mse;
    double wall_time_s = 0.0;
};

/// Trains seeds base_seed .. base_seed + count - 1, at most `jobs` at a time.
/// Rows come back ordered by seed.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, std::uint64_t base_seed, int count,
                                int jobs);

/// sweep.csv: one row per seed, then nothing else; wall_time_s is the only
/// column that varies between identical sweeps.
void write_sweep(std::span<const SweepRow> rows, const std::filesystem::path& out_dir);

}  // namespace csdp
