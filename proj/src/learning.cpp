#include "csdp/learning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace csdp {

void TrainConfig::validate() const {
    if (!(alpha >= 0.0)) throw std::invalid_argument("training: alpha must be >= 0");
    if (epochs < 0) throw std::invalid_argument("training: epochs must be >= 0");
    if (!(init_weight_range > 0.0 && init_weight_range <= 1.0))
        throw std::invalid_argument("training: init_weight_range must lie in (0, 1]");
    if (!(gamma_pos >= 0.0 && gamma_pos <= 1.0) || !(gamma_neg >= 0.0 && gamma_neg <= 1.0))
        throw std::invalid_argument("training: gamma_pos and gamma_neg must lie in [0, 1]");
}

double modulator_error(double z_p, int y) { return z_p - static_cast<double>(y); }

double csdp_delta(double eps, double z_post, double z_pre, double alpha, UpdateRule rule) {
    if (rule == UpdateRule::exact) return -alpha * eps * z_post * z_pre;
    if (eps == 0.0) return 0.0;
    const double magnitude = std::min({std::abs(eps), z_post, z_pre});
    if (magnitude <= 0.0) return 0.0;
    return eps > 0.0 ? -alpha * magnitude : alpha * magnitude;
}

int bits_to_value(std::span<const int> bits) {
    int v = 0;
    for (int b : bits) v = (v << 1) | (b ? 1 : 0);
    return v;
}

std::vector<int> value_to_bits(int value, int width) {
    std::vector<int> bits(static_cast<std::size_t>(width));
    for (int k = width - 1; k >= 0; --k, value >>= 1) bits[static_cast<std::size_t>(k)] = value & 1;
    return bits;
}

std::vector<Example> generate_negatives(std::span<const Example> positives, int label_bits) {
    const int labels = 1 << label_bits;
    std::vector<Example> out;
    for (const auto& p : positives) {
        const int truth = bits_to_value(p.label_bits);
        for (int v = 0; v < labels; ++v) {
            if (v == truth) continue;
            out.push_back(Example{p.input_bits, value_to_bits(v, label_bits), Phase::negative});
        }
    }
    return out;
}

EpochReport train_epoch(Network& net, std::span<const Example> dataset, const TrainConfig& config,
                        Rng& rng) {
    if (dataset.empty()) throw std::invalid_argument("train_epoch: empty dataset");
    const auto layers = net.num_layers();
    EpochReport report{std::vector<double>(layers, 0.0), std::vector<double>(layers, 0.0)};

    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));

    const auto rule = config.rule();
    const Volts overdrive = net.config().program_overdrive;
    for (std::size_t idx : order) {
        const Example& example = dataset[idx];
        const int y = example.target();
        const double gamma = y == 1 ? config.gamma_pos : config.gamma_neg;
        const ForwardResult pass = forward_pass(net, example);

        for (std::size_t l = 0; l < layers; ++l) {
            const auto& act = pass.layers[l];
            const VectorXd& z_pre = l == 0 ? pass.input.traces : pass.layers[l - 1].traces;
            const double eps = modulator_error(act.z_p, y);
            report.mse[l] += eps * eps;

            double moved = 0.0;
            const auto& layer = net.layer(l);
            for (Eigen::Index i = 0; i < layer.posts(); ++i) {
                for (Eigen::Index j = 0; j < layer.pres(); ++j) {
                    const double dw =
                        gamma * csdp_delta(eps, act.traces(i), z_pre(j), config.alpha, rule);
                    if (dw == 0.0) continue;
                    const SynapseState before = net.synapse(l, i, j);
                    SynapseState after;
                    if (config.program_mode == ProgramMode::device) {
                        after = program_weight_delta(before, dw, overdrive);
                    } else {
                        after = set_weight(before, std::clamp(weight_of(before) + dw, -1.0, 1.0));
                    }
                    net.set_synapse(l, i, j, after);
                    moved += std::abs(weight_of(after) - weight_of(before));
                }
            }
            report.mean_abs_delta[l] += moved / static_cast<double>(layer.posts() * layer.pres());
        }
    }
    const double n = static_cast<double>(dataset.size());
    for (std::size_t l = 0; l < layers; ++l) {
        report.mse[l] /= n;
        report.mean_abs_delta[l] /= n;
    }
    return report;
}

std::vector<EpochReport> train(Network& net, std::span<const Example> dataset,
                               const TrainConfig& config, Rng& rng) {
    config.validate();
    std::vector<EpochReport> history;
    history.reserve(static_cast<std::size_t>(config.epochs));
    for (int e = 0; e < config.epochs; ++e) history.push_back(train_epoch(net, dataset, config, rng));
    return history;
}

}  // namespace csdp
