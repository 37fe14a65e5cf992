#include "pidlab/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "pidlab/errors.hpp"

namespace pidlab {

namespace {

// First time the response crosses `level`, linearly interpolated between the
// bracketing samples; measured from the start of the record.
double first_crossing(const TimeSeries& s, double y_initial, double level, bool rising) {
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double v = s.values[k];
        const bool crossed = rising ? v >= level : v <= level;
        if (!crossed) continue;
        if (k == 0) return s.time_at(0);
        const double v0 = s.values[k - 1];
        const double frac = (v == v0) ? 0.0 : (level - v0) / (v - v0);
        return s.time_at(k - 1) + frac * s.h;
    }
    (void)y_initial;
    throw NotSettledError("identify_broida: response never crosses identification level");
}

}  // namespace

FopdtFit identify_broida(const TimeSeries& response, double u_step, double y_initial) {
    if (u_step == 0.0) throw DomainError("identify_broida: u_step must be nonzero");
    if (response.size() < 3) throw LengthError("identify_broida: response too short");

    const double y_final = response.values.back();
    const double span = y_final - y_initial;
    if (span == 0.0) throw DegenerateResponseError("identify_broida: zero response span");

    // settled check: the last 5% of samples must vary by < 0.1% of the span
    const std::size_t tail_start =
        response.size() - std::max<std::size_t>(2, response.size() / 20);
    double tail_min = response.values[tail_start], tail_max = tail_min;
    for (std::size_t k = tail_start; k < response.size(); ++k) {
        tail_min = std::min(tail_min, response.values[k]);
        tail_max = std::max(tail_max, response.values[k]);
    }
    if (tail_max - tail_min >= 1e-3 * std::fabs(span))
        throw NotSettledError("identify_broida: response has not reached steady state");

    const bool rising = span > 0.0;
    const double t_ref = response.time_at(0);
    const double t1 = first_crossing(response, y_initial, y_initial + 0.28 * span, rising) - t_ref;
    const double t2 = first_crossing(response, y_initial, y_initial + 0.40 * span, rising) - t_ref;

    FopdtFit fit;
    fit.k = span / u_step;
    fit.T = 5.5 * (t2 - t1);
    fit.tau = std::max(0.0, 2.8 * t1 - 1.8 * t2);
    if (fit.T <= 0.0) throw DegenerateResponseError("identify_broida: non-positive time constant");
    return fit;
}

ClassicGains tune_pi_broida(const FopdtFit& fit, double tau_floor, bool* floored) {
    if (fit.T <= 0.0) throw DomainError("tune_pi_broida: fit.T must be positive");
    if (fit.k == 0.0) throw DomainError("tune_pi_broida: fit.k must be nonzero");
    if (tau_floor <= 0.0) throw DomainError("tune_pi_broida: tau_floor must be positive");

    double tau = fit.tau;
    const bool capped = tau < tau_floor;
    if (capped) tau = tau_floor;
    if (floored) *floored = capped;

    ClassicGains g;
    g.kp = 0.8 * fit.T / (fit.k * tau);
    g.ki = g.kp / fit.T;  // Ti = T
    return g;
}

}  // namespace pidlab
