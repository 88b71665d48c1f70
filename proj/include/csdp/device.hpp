#pragma once

// Semi-empirical memristor: sinh I-V when not switching, linear conductance
// interpolation in the state variable, and threshold-gated switching that is
// linear in applied flux linkage.

namespace csdp {

using Volts = double;
using Amps = double;
using Siemens = double;
using Seconds = double;

struct MemristorParams {
    Siemens g_on = 1.0 / 1800.0;
    Siemens g_off = 1.0 / 4.637e4;
    Volts v_tp = 0.4;
    Volts v_tn = -0.55;
    Volts xi_pos = 0.3;
    Volts xi_neg = 0.3;
    double k_switch = 1e6;  ///< 1/(V*s)

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

struct MemristorState {
    double chi = 0.0;
    MemristorParams params{};
};

/// chi*g_on + (1-chi)*g_off.
Siemens conductance(const MemristorState& state);

Amps device_current(const MemristorState& state, Volts v);

/// Returns the state after a rectangular pulse of `duration` at voltage `v`.
/// Sub-threshold pulses leave the state untouched; chi is clamped to [0, 1].
MemristorState apply_program_pulse(const MemristorState& state, Volts v, Seconds duration);

}  // namespace csdp
