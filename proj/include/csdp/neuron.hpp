#pragma once

#include <functional>
#include <vector>

#include "csdp/device.hpp"

namespace csdp {

using Hertz = double;
using Farads = double;

/// Behavioral LIF constants. Defaults are the measured 45 nm neuron.
struct NeuronParams {
    Volts phi = 0.7;        ///< firing threshold
    Farads c_m = 120e-15;   ///< membrane capacitance
    Amps i_leak = 365e-9;   ///< constant leak
    Seconds t_r = 12e-9;    ///< absolute refractory period
    Seconds t_w = 13e-9;    ///< spike width

    void validate() const;

    /// 1/(t_r + t_w), the rate reached as the input current grows without bound.
    Hertz max_rate() const { return 1.0 / (t_r + t_w); }
};

struct SpikeTrain {
    std::vector<Seconds> spike_times;
    Seconds window = 0.0;

    Hertz mean_rate_from_intervals() const;
};

/// Steady-state rate for a constant input current; zero at or below the leak.
Hertz spike_rate(const NeuronParams& params, Amps i_in);

/// Spikes counted in a window of length `window` at the steady-state rate.
long spike_count(const NeuronParams& params, Amps i_in, Seconds window);

/// Time-stepped membrane integration used to validate the closed-form rate.
///
/// The membrane charges at (i_in - i_leak)/c_m while the input gate is open
/// and is clamped at 0 from below. Crossing phi emits a spike, the output
/// stays high for t_w and the membrane is held at 0 for t_w + t_r (the
/// input gate is closed while the spike propagates back through the buffer
/// chain). Spike times are the step at which the threshold was crossed.
SpikeTrain integrate_oracle(const NeuronParams& params,
                            const std::function<Amps(Seconds)>& i_in,
                            Seconds dt, Seconds window);

}  // namespace csdp
