#include "csdp/trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csdp {

void TraceParams::validate() const {
    if (!(c_tr > 0.0) || !(i_charge > 0.0) || !(i_discharge > 0.0) || !(v_buf > 0.0) ||
        !(v_dd > 0.0) || !(window > 0.0))
        throw std::invalid_argument("trace: c_tr, i_charge, i_discharge, v_buf, v_dd and window must be > 0");
    if (!(v_buf < v_dd)) throw std::invalid_argument("trace: v_buf must be below v_dd");
    if (tau_z < 0.0) throw std::invalid_argument("trace: tau_z must be >= 0 (0 disables decay)");
}

Amps required_charge_current(const TraceParams& params, Hertz nu_max, Seconds t_w) {
    return params.v_dd * params.c_tr / (nu_max * params.window * t_w);
}

TraceState accumulate_window(const TraceState& state, const TraceParams& params, long spikes,
                             Seconds t_w) {
    if (spikes < 0) throw std::invalid_argument("accumulate_window: negative spike count");
    const double step = t_w * params.i_charge / params.c_tr;
    double v = 0.0;
    if (params.tau_z > 0.0) {
        const double decay = std::exp(-params.window / params.tau_z);
        double packets = 0.0;
        if (spikes > 0) {
            // Geometric sum of the packets' surviving fractions.
            const double r = std::exp(-params.window / (static_cast<double>(spikes) * params.tau_z));
            packets = (1.0 - std::pow(r, static_cast<double>(spikes))) / (1.0 - r);
        }
        v = state.v_ctr * decay + step * packets;
    } else {
        v = state.v_ctr + step * static_cast<double>(spikes);
    }
    return TraceState{std::clamp(v, 0.0, params.v_dd)};
}

Seconds pulse_width(const TraceState& state, const TraceParams& params) {
    return std::max(0.0, (state.v_ctr - params.v_buf) * params.c_tr / params.i_discharge);
}

double normalized_value(const TraceState& state, const TraceParams& params) {
    const Seconds full = pulse_width(TraceState{params.v_dd}, params);
    return std::clamp(pulse_width(state, params) / full, 0.0, 1.0);
}

double window_trace(const TraceParams& params, long spikes, Seconds t_w) {
    return normalized_value(accumulate_window(TraceState{}, params, spikes, t_w), params);
}

}  // namespace csdp
