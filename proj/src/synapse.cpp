#include "csdp/synapse.hpp"

#include <cmath>
#include <stdexcept>

namespace csdp {

double weight_of(const SynapseState& s) { return s.exc.chi - s.inh.chi; }

SynapseState set_weight(const SynapseState& s, double w) {
    if (!(w >= -1.0 && w <= 1.0)) throw std::invalid_argument("set_weight: w must lie in [-1, 1]");
    SynapseState next = s;
    next.exc.chi = (1.0 + w) / 2.0;
    next.inh.chi = (1.0 - w) / 2.0;
    return next;
}

Seconds program_duration(const MemristorParams& params, double delta_w, Volts overdrive) {
    // Each device moves by |delta_w|/2 so their difference moves by |delta_w|.
    return std::abs(delta_w) / (2.0 * params.k_switch * overdrive);
}

SynapseState program_weight_delta(const SynapseState& s, double delta_w, Volts overdrive) {
    if (!(std::abs(delta_w) <= 2.0))
        throw std::invalid_argument("program_weight_delta: |delta_w| must be <= 2");
    if (delta_w == 0.0) return s;

    SynapseState next = s;
    const Volts raise_exc = s.exc.params.v_tp + overdrive;
    const Volts lower_exc = s.exc.params.v_tn - overdrive;
    const Volts raise_inh = s.inh.params.v_tp + overdrive;
    const Volts lower_inh = s.inh.params.v_tn - overdrive;
    const Seconds t_exc = program_duration(s.exc.params, delta_w, overdrive);
    const Seconds t_inh = program_duration(s.inh.params, delta_w, overdrive);
    if (delta_w > 0.0) {
        next.exc = apply_program_pulse(s.exc, raise_exc, t_exc);
        next.inh = apply_program_pulse(s.inh, lower_inh, t_inh);
    } else {
        next.exc = apply_program_pulse(s.exc, lower_exc, t_exc);
        next.inh = apply_program_pulse(s.inh, raise_inh, t_inh);
    }
    return next;
}

Amps injected_current(double w, Hertz pre_rate, Seconds t_w, Amps i_s) {
    return pre_rate * t_w * w * i_s;
}

Amps conductance_output(const SynapseState& s, Volts v_read, Amps full_scale) {
    const auto& p = s.exc.params;
    if (v_read == 0.0 || !(v_read > p.v_tn && v_read < p.v_tp))
        throw std::invalid_argument("conductance_output: read voltage must be nonzero and sub-threshold");
    const Siemens g_exc = device_current(s.exc, v_read) / v_read;
    const Siemens g_inh = device_current(s.inh, v_read) / v_read;
    return full_scale * (g_exc - g_inh) / (p.g_on - p.g_off);
}

}  // namespace csdp
