#include "csdp/neuron.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csdp {

void NeuronParams::validate() const {
    if (!(phi > 0.0) || !(c_m > 0.0) || !(i_leak > 0.0) || !(t_r > 0.0) || !(t_w > 0.0))
        throw std::invalid_argument("neuron: phi, c_m, i_leak, t_r and t_w must all be > 0");
}

Hertz SpikeTrain::mean_rate_from_intervals() const {
    if (spike_times.size() < 2) return 0.0;
    const double span = spike_times.back() - spike_times.front();
    return static_cast<double>(spike_times.size() - 1) / span;
}

Hertz spike_rate(const NeuronParams& params, Amps i_in) {
    if (!(i_in > params.i_leak)) return 0.0;
    return 1.0 / (params.phi * params.c_m / (i_in - params.i_leak) + params.t_r + params.t_w);
}

long spike_count(const NeuronParams& params, Amps i_in, Seconds window) {
    if (!(window > 0.0)) throw std::invalid_argument("spike_count: window must be > 0");
    return static_cast<long>(std::floor((window + params.t_r) * spike_rate(params, i_in)));
}

SpikeTrain integrate_oracle(const NeuronParams& params,
                            const std::function<Amps(Seconds)>& i_in,
                            Seconds dt, Seconds window) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_oracle: dt must be > 0");
    if (dt > 0.5e-9) throw std::invalid_argument("integrate_oracle: dt must be <= 0.5 ns");
    if (!(window > 0.0)) throw std::invalid_argument("integrate_oracle: window must be > 0");

    // Integer step bookkeeping keeps the hold interval exact over long windows.
    const auto n_steps = static_cast<long long>(std::llround(window / dt));
    const auto hold_steps = static_cast<long long>(std::llround((params.t_w + params.t_r) / dt));

    SpikeTrain train;
    train.window = window;
    double v = 0.0;
    long long hold = 0;
    for (long long k = 0; k < n_steps; ++k) {
        if (hold > 0) {
            --hold;
            continue;
        }
        const Seconds t = static_cast<double>(k) * dt;
        v += (i_in(t) - params.i_leak) * dt / params.c_m;
        v = std::max(v, 0.0);
        if (v >= params.phi) {
            train.spike_times.push_back(t + dt);
            v = 0.0;
            hold = hold_steps;
        }
    }
    return train;
}

}  // namespace csdp
