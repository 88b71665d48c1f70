#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "csdp/device.hpp"
#include "csdp/neuron.hpp"
#include "csdp/random.hpp"
#include "csdp/synapse.hpp"
#include "csdp/trace.hpp"

namespace csdp {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using CountVector = Eigen::Matrix<long, Eigen::Dynamic, 1>;

struct NetworkConfig {
    /// Neuron counts per layer, inputs first.
    std::vector<int> layer_sizes{3, 5, 3};
    int input_bits = 2;
    int label_bits = 1;

    NeuronParams neuron{};
    TraceParams trace{};
    MemristorParams device{};

    Amps i_hi = 10e-6;            ///< input current for a logic-1 bit
    Amps i_s = 20e-6;             ///< synapse spike-to-current scale
    double goodness_weight = 0.6; ///< fixed weight into each goodness neuron
    Volts program_overdrive = kProgramOverdrive;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;

    std::size_t num_layers() const { return layer_sizes.empty() ? 0 : layer_sizes.size() - 1; }
};

enum class Phase { positive, negative };

struct Example {
    std::vector<int> input_bits;
    std::vector<int> label_bits;
    Phase phase = Phase::positive;

    /// 1 for positive examples, 0 for negative ones.
    int target() const { return phase == Phase::positive ? 1 : 0; }
};

/// One trainable layer: synapse matrix stored as two device-state matrices
/// (post x pre) plus the constant weight feeding the layer's goodness neuron.
struct LayerState {
    MatrixXd chi_exc;
    MatrixXd chi_inh;
    double goodness_weight = 0.6;

    Eigen::Index posts() const { return chi_exc.rows(); }
    Eigen::Index pres() const { return chi_exc.cols(); }
    MatrixXd weights() const { return chi_exc - chi_inh; }
};

class Network {
  public:
    /// Builds the layers with every synapse at w = 0.
    explicit Network(NetworkConfig config);

    const NetworkConfig& config() const { return config_; }
    std::size_t num_layers() const { return layers_.size(); }
    const LayerState& layer(std::size_t l) const { return layers_.at(l); }

    SynapseState synapse(std::size_t l, Eigen::Index post, Eigen::Index pre) const;
    void set_synapse(std::size_t l, Eigen::Index post, Eigen::Index pre, const SynapseState& s);

    /// Sets layer `l` from a weight matrix via the complementary convention.
    void set_weights(std::size_t l, const MatrixXd& w);

    /// Draws every weight uniformly from [-range, range].
    void initialize_uniform(double range, Rng& rng);

  private:
    NetworkConfig config_;
    std::vector<LayerState> layers_;
};

struct LayerActivity {
    VectorXd currents;  ///< net synaptic (or source) input current, amps
    VectorXd rates;
    CountVector counts;
    VectorXd traces;  ///< normalized, in [0, 1]
    Amps goodness_current = 0.0;
    Hertz goodness_rate = 0.0;
    double z_p = 0.0;  ///< normalized goodness trace
};

struct ForwardResult {
    LayerActivity input;
    std::vector<LayerActivity> layers;

    std::vector<double> goodness() const;
};

/// Input currents, input bits first then label bits.
VectorXd encode_example(const Example& example, const NetworkConfig& config);

/// Post-synaptic rates. The net current is the injected synaptic current
/// alone; the leak is subtracted once, inside spike_rate.
VectorXd layer_forward(const LayerState& layer, const VectorXd& pre_rates,
                       const NetworkConfig& config);

/// One presentation window with freshly reset traces.
ForwardResult forward_pass(const Network& net, const Example& example);

/// Weight snapshot as CSV: layer,post,pre,chi_exc,chi_inh,w.
void write_weights(const Network& net, std::ostream& out);

/// Loads a snapshot produced by write_weights. Every synapse must be listed
/// exactly once; throws std::runtime_error naming the offending line.
void read_weights(Network& net, std::istream& in);

}  // namespace csdp
