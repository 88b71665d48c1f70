#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csdp/network.hpp"
#include "csdp/random.hpp"

namespace csdp {

enum class UpdateRule {
    min_approx,  ///< -alpha*sgn(eps)*min(|eps|, z_post, z_pre), the AND-gate form
    exact,       ///< -alpha*eps*z_post*z_pre
};

enum class ProgramMode {
    device,  ///< weight changes go through memristor programming pulses
    direct,  ///< weight changes are added to w and clamped
};

struct TrainConfig {
    double alpha = 0.05;
    int epochs = 300;
    double init_weight_range = 1.0;
    bool use_min_approx = true;
    std::uint64_t seed = 0;
    double gamma_pos = 1.0;
    double gamma_neg = 1.0;
    ProgramMode program_mode = ProgramMode::device;

    void validate() const;
    UpdateRule rule() const { return use_min_approx ? UpdateRule::min_approx : UpdateRule::exact; }
};

/// Per-layer statistics for one pass over the dataset.
struct EpochReport {
    std::vector<double> mse;             ///< mean of (z_p - y)^2
    std::vector<double> mean_abs_delta;  ///< mean realized |dw| per synapse per example
};

/// z_p - y; traces are already normalized so z_max is 1.
double modulator_error(double z_p, int y);

double csdp_delta(double eps, double z_post, double z_pre, double alpha,
                  UpdateRule rule = UpdateRule::min_approx);

/// One negative per positive and per incorrect label in the 2^label_bits space.
std::vector<Example> generate_negatives(std::span<const Example> positives, int label_bits);

/// Presents every example once in a seed-shuffled order. Each example runs a
/// forward pass, then every layer applies its own modulated update using the
/// traces of that same pass.
EpochReport train_epoch(Network& net, std::span<const Example> dataset, const TrainConfig& config,
                        Rng& rng);

/// Runs config.epochs epochs, returning one report per epoch.
std::vector<EpochReport> train(Network& net, std::span<const Example> dataset,
                               const TrainConfig& config, Rng& rng);

/// Label value <-> bits, most significant bit first.
int bits_to_value(std::span<const int> bits);
std::vector<int> value_to_bits(int value, int width);

}  // namespace csdp
