#pragma once

#include "csdp/neuron.hpp"

namespace csdp {

/// Windowed spike-trace circuit. The capacitor gains t_w*i_charge/c_tr per
/// spike, saturates at v_dd, and is read out by discharging through
/// i_discharge past the buffer threshold v_buf.
struct TraceParams {
    Farads c_tr = 100e-15;
    Amps i_charge = 240e-9;
    Amps i_discharge = 100e-9;
    Volts v_buf = 0.7;
    Volts v_dd = 1.0;
    Seconds window = 1e-6;
    /// Exponential decay time constant; 0 disables decay (pure spike count).
    Seconds tau_z = 0.0;

    void validate() const;
};

struct TraceState {
    Volts v_ctr = 0.0;
};

/// v_dd*c_tr/(nu_max*window*t_w): the charge current that fills the
/// capacitor exactly when the neuron fires at nu_max for the whole window.
Amps required_charge_current(const TraceParams& params, Hertz nu_max, Seconds t_w);

/// Adds `spikes` charge packets, clamped at v_dd. With tau_z > 0 the state
/// also decays over the window and the spikes are taken as evenly spaced,
/// the last one at the window edge.
TraceState accumulate_window(const TraceState& state, const TraceParams& params, long spikes,
                             Seconds t_w);

/// Time the discharging capacitor stays above v_buf; 0 inside the dead zone.
Seconds pulse_width(const TraceState& state, const TraceParams& params);

/// pulse_width scaled by the full-supply pulse width, in [0, 1].
double normalized_value(const TraceState& state, const TraceParams& params);

/// Convenience: normalized trace after one reset-then-accumulate window.
double window_trace(const TraceParams& params, long spikes, Seconds t_w);

}  // namespace csdp
