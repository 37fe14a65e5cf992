#pragma once

#include <utility>
#include <vector>

#include "pidlab/time_series.hpp"

namespace pidlab {

// Output reference trajectory with its first two derivatives. All three
// series share h, t0, and length.
struct ReferenceTrajectory {
    TimeSeries y_star;     // reference output
    TimeSeries d1_y_star;  // first derivative
    TimeSeries d2_y_star;  // second derivative

    std::size_t size() const { return y_star.size(); }
};

enum class ReferenceMode {
    StepBackwardDiff,   // piecewise-constant steps, derivatives by backward difference
    SmoothSecondOrder,  // critically damped second-order filter, analytic derivatives
};

// One (time, setpoint) pair; the setpoint takes effect at the first sample
// whose time is >= the scheduled time and holds until the next entry.
using SetpointSchedule = std::vector<std::pair<double, double>>;

// Builds the reference over [0, horizon] at step h.
//
// StepBackwardDiff keeps the derivative series consistent with the
// backward-difference convention sample-for-sample (d1[k] = (y*[k]-y*[k-1])/h,
// zero at k=0); this is the mode under which the sampled classic/intelligent
// controller identity is exact.
//
// SmoothSecondOrder filters each step through a unit-gain critically damped
// second-order lag with both poles at -2/tau_f (so the total residence time
// is tau_f and the response is within 1e-6 of the target after 10*tau_f);
// derivatives come from the filter state, not finite differences.
ReferenceTrajectory make_reference(const SetpointSchedule& schedule, double h,
                                   double horizon, ReferenceMode mode,
                                   double tau_f = 0.5);

// The raw piecewise-constant setpoint series for the same schedule (what the
// smooth mode is filtering; identical to y_star in step mode).
TimeSeries make_setpoint_series(const SetpointSchedule& schedule, double h, double horizon);

}  // namespace pidlab
