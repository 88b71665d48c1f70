#include "csdp/device.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csdp {

void MemristorParams::validate() const {
    if (!(g_off > 0.0)) throw std::invalid_argument("memristor: g_off must be > 0");
    if (!(g_on > g_off)) throw std::invalid_argument("memristor: g_on must exceed g_off");
    if (!(v_tp > 0.0)) throw std::invalid_argument("memristor: v_tp must be > 0");
    if (!(v_tn < 0.0)) throw std::invalid_argument("memristor: v_tn must be < 0");
    if (!(xi_pos > 0.0) || !(xi_neg > 0.0))
        throw std::invalid_argument("memristor: xi_pos and xi_neg must be > 0");
    if (!(k_switch > 0.0)) throw std::invalid_argument("memristor: k_switch must be > 0");
}

Siemens conductance(const MemristorState& state) {
    const auto& p = state.params;
    return state.chi * p.g_on + (1.0 - state.chi) * p.g_off;
}

Amps device_current(const MemristorState& state, Volts v) {
    const auto& p = state.params;
    const double xi = v >= 0.0 ? p.xi_pos : p.xi_neg;
    return state.chi * p.g_on * v + (1.0 - state.chi) * p.g_off * xi * std::sinh(v / xi);
}

MemristorState apply_program_pulse(const MemristorState& state, Volts v, Seconds duration) {
    if (duration < 0.0) throw std::invalid_argument("apply_program_pulse: negative duration");
    const auto& p = state.params;
    MemristorState next = state;
    if (v > p.v_tp) {
        next.chi += p.k_switch * (v - p.v_tp) * duration;
    } else if (v < p.v_tn) {
        next.chi -= p.k_switch * (p.v_tn - v) * duration;
    }
    next.chi = std::clamp(next.chi, 0.0, 1.0);
    return next;
}

}  // namespace csdp
