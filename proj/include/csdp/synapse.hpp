#pragma once

#include "csdp/device.hpp"
#include "csdp/neuron.hpp"

namespace csdp {

/// Complementary excitatory/inhibitory memristor pair. w = chi_exc - chi_inh.
struct SynapseState {
    MemristorState exc{};
    MemristorState inh{};
    Amps i_s = 20e-6;  ///< spike-to-current scale
};

/// Programming voltage beyond each switching threshold.
inline constexpr Volts kProgramOverdrive = 0.1;

double weight_of(const SynapseState& s);

/// chi_exc = (1+w)/2, chi_inh = (1-w)/2. Throws for w outside [-1, 1].
SynapseState set_weight(const SynapseState& s, double w);

/// Pulse-width-modulated push-pull programming: both devices see a pulse of
/// the same duration, exc above v_tp and inh below v_tn (or the reverse for
/// negative deltas). Saturation at the device bounds is silent.
SynapseState program_weight_delta(const SynapseState& s, double delta_w,
                                  Volts overdrive = kProgramOverdrive);

/// Pulse duration that moves the weight by |delta_w| at the given overdrive.
Seconds program_duration(const MemristorParams& params, double delta_w,
                         Volts overdrive = kProgramOverdrive);

/// Average current into the post-synaptic membrane: pre_rate*t_w*w*i_s.
Amps injected_current(double w, Hertz pre_rate, Seconds t_w, Amps i_s);

/// Output current of the push-pull current-mirror pair for a read pulse of
/// `v_read` (kept inside the switching thresholds). The excitatory branch
/// sources and the inhibitory branch sinks, each scaled by its conductance's
/// position between g_off and g_on. Zero at w = 0 and monotone in w.
Amps conductance_output(const SynapseState& s, Volts v_read, Amps full_scale);

}  // namespace csdp
