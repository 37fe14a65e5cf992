#include "pidlab/reference.hpp"

#include <cmath>
#include <cstddef>

#include "pidlab/errors.hpp"

namespace pidlab {

namespace {

std::size_t sample_count(double horizon, double h) {
    return static_cast<std::size_t>(std::llround(horizon / h)) + 1;
}

// Scheduled value at time t: last entry whose time is <= t (+ half-sample
// slack so the entry lands on the intended sample despite rounding);
// 0 before the first entry (system starts at rest).
double scheduled_value(const SetpointSchedule& schedule, double t, double h) {
    double v = 0.0;
    for (const auto& [ts, sp] : schedule) {
        if (ts <= t + 0.5 * h)
            v = sp;
        else
            break;
    }
    return v;
}

void check_schedule(const SetpointSchedule& schedule) {
    if (schedule.empty()) throw DomainError("make_reference: empty schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i].first < schedule[i - 1].first)
            throw DomainError("make_reference: schedule times must be non-decreasing");
}

}  // namespace

TimeSeries make_setpoint_series(const SetpointSchedule& schedule, double h, double horizon) {
    check_schedule(schedule);
    if (h <= 0.0) throw DomainError("make_setpoint_series: h must be positive");
    if (horizon <= 0.0) throw DomainError("make_setpoint_series: horizon must be positive");

    const std::size_t n = sample_count(horizon, h);
    TimeSeries out{h, 0.0, std::vector<double>(n, 0.0)};
    for (std::size_t k = 0; k < n; ++k)
        out.values[k] = scheduled_value(schedule, static_cast<double>(k) * h, h);
    return out;
}

ReferenceTrajectory make_reference(const SetpointSchedule& schedule, double h,
                                   double horizon, ReferenceMode mode, double tau_f) {
    TimeSeries target = make_setpoint_series(schedule, h, horizon);
    const std::size_t n = target.size();

    ReferenceTrajectory ref;
    if (mode == ReferenceMode::StepBackwardDiff) {
        ref.y_star = target;
        ref.d1_y_star = backward_difference(target, 1);
        ref.d2_y_star = backward_difference(target, 2);
        return ref;
    }

    // Critically damped second-order unit-gain filter, both poles at
    // w = 2/tau_f. The deviation z = (y - r, v) obeys dz/dt = A z with
    // (A - lambda I) nilpotent, so one sampling interval propagates exactly:
    //   z(t+h) = e^{lambda h} (I + (A - lambda I) h) z(t)
    if (tau_f <= 0.0) throw DomainError("make_reference: tau_f must be positive");
    const double w = 2.0 / tau_f;
    const double decay = std::exp(-w * h);

    ref.y_star = TimeSeries{h, 0.0, std::vector<double>(n, 0.0)};
    ref.d1_y_star = TimeSeries{h, 0.0, std::vector<double>(n, 0.0)};
    ref.d2_y_star = TimeSeries{h, 0.0, std::vector<double>(n, 0.0)};

    double y = target.values[0];  // start already at the initial target: no
    double v = 0.0;               // artificial transient from rest at 0
    for (std::size_t k = 0; k < n; ++k) {
        const double r = target.values[k];
        const double z1 = y - r;
        ref.y_star.values[k] = y;
        ref.d1_y_star.values[k] = v;
        ref.d2_y_star.values[k] = -w * w * z1 - 2.0 * w * v;

        const double z1n = (1.0 + w * h) * z1 + h * v;
        const double z2n = -w * w * h * z1 + (1.0 - w * h) * v;
        y = r + decay * z1n;
        v = decay * z2n;
    }
    return ref;
}

}  // namespace pidlab
