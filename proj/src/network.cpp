#include "csdp/network.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace csdp {

void NetworkConfig::validate() const {
    if (layer_sizes.size() < 2)
        throw std::invalid_argument("network: layer_sizes needs inputs and at least one hidden layer");
    for (int n : layer_sizes)
        if (n <= 0) throw std::invalid_argument("network: every layer size must be positive");
    if (input_bits < 0 || label_bits < 1)
        throw std::invalid_argument("network: input_bits must be >= 0 and label_bits >= 1");
    if (layer_sizes.front() != input_bits + label_bits)
        throw std::invalid_argument(
            fmt::format("network: layer_sizes[0] = {} but input_bits + label_bits = {}",
                        layer_sizes.front(), input_bits + label_bits));
    if (!(i_hi > 0.0) || !(i_s > 0.0))
        throw std::invalid_argument("network: i_hi and i_s must be > 0");
    if (!(goodness_weight > 0.0))
        throw std::invalid_argument("network: goodness_weight must be > 0");
    if (!(program_overdrive > 0.0))
        throw std::invalid_argument("network: program_overdrive must be > 0");
    neuron.validate();
    trace.validate();
    device.validate();
}

std::vector<double> ForwardResult::goodness() const {
    std::vector<double> out;
    out.reserve(layers.size());
    for (const auto& l : layers) out.push_back(l.z_p);
    return out;
}

Network::Network(NetworkConfig config) : config_(std::move(config)) {
    config_.validate();
    for (std::size_t l = 0; l + 1 < config_.layer_sizes.size(); ++l) {
        const auto posts = config_.layer_sizes[l + 1];
        const auto pres = config_.layer_sizes[l];
        layers_.push_back(LayerState{MatrixXd::Constant(posts, pres, 0.5),
                                     MatrixXd::Constant(posts, pres, 0.5),
                                     config_.goodness_weight});
    }
}

SynapseState Network::synapse(std::size_t l, Eigen::Index post, Eigen::Index pre) const {
    const auto& layer = layers_.at(l);
    return SynapseState{MemristorState{layer.chi_exc(post, pre), config_.device},
                        MemristorState{layer.chi_inh(post, pre), config_.device}, config_.i_s};
}

void Network::set_synapse(std::size_t l, Eigen::Index post, Eigen::Index pre,
                          const SynapseState& s) {
    auto& layer = layers_.at(l);
    layer.chi_exc(post, pre) = s.exc.chi;
    layer.chi_inh(post, pre) = s.inh.chi;
}

void Network::set_weights(std::size_t l, const MatrixXd& w) {
    auto& layer = layers_.at(l);
    if (w.rows() != layer.posts() || w.cols() != layer.pres())
        throw std::invalid_argument("set_weights: matrix shape does not match the layer");
    if ((w.array() < -1.0).any() || (w.array() > 1.0).any())
        throw std::invalid_argument("set_weights: weights must lie in [-1, 1]");
    layer.chi_exc = (1.0 + w.array()) / 2.0;
    layer.chi_inh = (1.0 - w.array()) / 2.0;
}

void Network::initialize_uniform(double range, Rng& rng) {
    if (!(range > 0.0 && range <= 1.0))
        throw std::invalid_argument("initialize_uniform: range must lie in (0, 1]");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        MatrixXd w(layers_[l].posts(), layers_[l].pres());
        // Row-major draw order keeps snapshots readable against the seed.
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-range, range);
        set_weights(l, w);
    }
}

namespace {

LayerActivity activity_from_currents(const VectorXd& currents, const NetworkConfig& config) {
    const auto n = currents.size();
    LayerActivity a;
    a.currents = currents;
    a.rates.resize(n);
    a.counts.resize(n);
    a.traces.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a.rates(i) = spike_rate(config.neuron, currents(i));
        a.counts(i) = spike_count(config.neuron, currents(i), config.trace.window);
        a.traces(i) = window_trace(config.trace, a.counts(i), config.neuron.t_w);
    }
    return a;
}

void attach_goodness(LayerActivity& a, double goodness_weight, const NetworkConfig& config) {
    // Every layer neuron drives the goodness neuron through the same fixed weight.
    a.goodness_current =
        injected_current(goodness_weight, a.rates.sum(), config.neuron.t_w, config.i_s);
    a.goodness_rate = spike_rate(config.neuron, a.goodness_current);
    const long count = spike_count(config.neuron, a.goodness_current, config.trace.window);
    a.z_p = window_trace(config.trace, count, config.neuron.t_w);
}

}  // namespace

VectorXd encode_example(const Example& example, const NetworkConfig& config) {
    if (static_cast<int>(example.input_bits.size()) != config.input_bits ||
        static_cast<int>(example.label_bits.size()) != config.label_bits)
        throw std::invalid_argument(fmt::format(
            "encode_example: expected {} input and {} label bits, got {} and {}",
            config.input_bits, config.label_bits, example.input_bits.size(),
            example.label_bits.size()));
    VectorXd currents(config.input_bits + config.label_bits);
    Eigen::Index k = 0;
    for (int b : example.input_bits) currents(k++) = b ? config.i_hi : 0.0;
    for (int b : example.label_bits) currents(k++) = b ? config.i_hi : 0.0;
    return currents;
}

VectorXd layer_forward(const LayerState& layer, const VectorXd& pre_rates,
                       const NetworkConfig& config) {
    if (pre_rates.size() != layer.pres())
        throw std::invalid_argument("layer_forward: pre-synaptic rate count does not match the layer");
    const VectorXd currents = (layer.weights() * pre_rates) * (config.neuron.t_w * config.i_s);
    return currents.unaryExpr([&](double i) { return spike_rate(config.neuron, i); });
}

ForwardResult forward_pass(const Network& net, const Example& example) {
    const auto& config = net.config();
    ForwardResult result;
    result.input = activity_from_currents(encode_example(example, config), config);
    const VectorXd* pre = &result.input.rates;
    for (std::size_t l = 0; l < net.num_layers(); ++l) {
        const auto& layer = net.layer(l);
        const VectorXd currents = (layer.weights() * *pre) * (config.neuron.t_w * config.i_s);
        auto activity = activity_from_currents(currents, config);
        attach_goodness(activity, layer.goodness_weight, config);
        result.layers.push_back(std::move(activity));
        pre = &result.layers.back().rates;
    }
    return result;
}

void write_weights(const Network& net, std::ostream& out) {
    out << "layer,post,pre,chi_exc,chi_inh,w\n";
    for (std::size_t l = 0; l < net.num_layers(); ++l) {
        const auto& layer = net.layer(l);
        for (Eigen::Index i = 0; i < layer.posts(); ++i)
            for (Eigen::Index j = 0; j < layer.pres(); ++j) {
                const double e = layer.chi_exc(i, j);
                const double h = layer.chi_inh(i, j);
                out << fmt::format("{},{},{},{:.17g},{:.17g},{:.17g}\n", l + 1, i, j, e, h, e - h);
            }
    }
}

namespace {

double parse_number(const std::string& field, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size())
        throw std::runtime_error(fmt::format("weights line {}: '{}' is not a number", line_no, field));
    return v;
}

}  // namespace

void read_weights(Network& net, std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw std::runtime_error("weights: empty snapshot");
    ++line_no;
    if (line != "layer,post,pre,chi_exc,chi_inh,w")
        throw std::runtime_error("weights line 1: unexpected header");

    std::vector<Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>> seen;
    for (std::size_t l = 0; l < net.num_layers(); ++l)
        seen.emplace_back(Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(
            net.layer(l).posts(), net.layer(l).pres(), false));

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields.size() != 6)
            throw std::runtime_error(fmt::format("weights line {}: expected 6 fields", line_no));
        const auto layer = static_cast<long>(parse_number(fields[0], line_no));
        const auto post = static_cast<long>(parse_number(fields[1], line_no));
        const auto pre = static_cast<long>(parse_number(fields[2], line_no));
        if (layer < 1 || static_cast<std::size_t>(layer) > net.num_layers() || post < 0 ||
            post >= net.layer(layer - 1).posts() || pre < 0 || pre >= net.layer(layer - 1).pres())
            throw std::runtime_error(fmt::format("weights line {}: index out of range", line_no));
        const double e = parse_number(fields[3], line_no);
        const double h = parse_number(fields[4], line_no);
        if (!(e >= 0.0 && e <= 1.0 && h >= 0.0 && h <= 1.0))
            throw std::runtime_error(fmt::format("weights line {}: chi outside [0, 1]", line_no));
        auto& mark = seen[layer - 1](post, pre);
        if (mark) throw std::runtime_error(fmt::format("weights line {}: duplicate synapse", line_no));
        mark = true;
        auto s = net.synapse(layer - 1, post, pre);
        s.exc.chi = e;
        s.inh.chi = h;
        net.set_synapse(layer - 1, post, pre, s);
    }
    for (std::size_t l = 0; l < seen.size(); ++l)
        if (!seen[l].all())
            throw std::runtime_error(fmt::format("weights: layer {} is incomplete", l + 1));
}

}  // namespace csdp
