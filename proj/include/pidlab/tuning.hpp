#pragma once

#include "pidlab/classic.hpp"
#include "pidlab/time_series.hpp"

namespace pidlab {

// First-order-plus-dead-time fit k e^{-tau s} / (1 + T s).
struct FopdtFit {
    double k = 0.0;    // static gain
    double T = 0.0;    // time constant, seconds (> 0)
    double tau = 0.0;  // dead time, seconds (>= 0)
};

// Two-point step-response identification (the 28%/40% rule):
//   k  = (y_final - y_initial) / u_step
//   t1 = first crossing of 28% of the span, t2 = first crossing of 40%
//   T  = 5.5 (t2 - t1),  tau = max(0, 2.8 t1 - 1.8 t2)
// Crossings are located by linear interpolation between samples; crossing
// times are measured from the start of the record.
//
// Preconditions: the response must have settled (the last 5% of samples vary
// by less than 0.1% of the span) and the span must be nonzero.
// Throws NotSettledError / DegenerateResponseError otherwise.
FopdtFit identify_broida(const TimeSeries& response, double u_step, double y_initial);

// PI gains from the fit:  kp = 0.8 T / (k tau),  Ti = T,  ki = kp / Ti.
// A dead time below `tau_floor` is capped to the floor before use so a
// delay-free fit cannot demand infinite gain; `floored` (when given) reports
// whether the cap engaged.
ClassicGains tune_pi_broida(const FopdtFit& fit, double tau_floor = 0.001,
                            bool* floored = nullptr);

}  // namespace pidlab
