#include <algorithm>
#include <cmath>
#include <cstddef>

#include "pidlab/errors.hpp"
#include "pidlab/scenario.hpp"

namespace pidlab {

Metrics compute_metrics(const Trajectory& traj,
                        std::optional<std::pair<double, double>> window) {
    const std::size_t n = traj.output.size();
    if (n == 0) throw DomainError("compute_metrics: empty trajectory");

    const double h = traj.output.h;
    double t_lo = traj.time.values.front();
    double t_hi = traj.time.values.back();
    if (window) {
        t_lo = window->first;
        t_hi = window->second;
        if (t_lo < traj.time.values.front() - 0.5 * h ||
            t_hi > traj.time.values.back() + 0.5 * h || t_hi < t_lo)
            throw DomainError("compute_metrics: window outside trajectory span");
    }

    std::size_t k_lo = n, k_hi = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = traj.time.values[k];
        if (t >= t_lo - 0.5 * h && t <= t_hi + 0.5 * h) {
            k_lo = std::min(k_lo, k);
            k_hi = std::max(k_hi, k);
        }
    }
    if (k_lo > k_hi) throw DomainError("compute_metrics: empty window");

    const double sp_final = traj.setpoint.values[k_hi];
    const double y_start = traj.output.values[k_lo];
    double span = std::fabs(sp_final - y_start);
    if (span == 0.0) span = std::max(std::fabs(sp_final), 1.0);

    Metrics m;
    double peak = 0.0;  // worst excursion beyond the final setpoint
    const bool rising = sp_final >= y_start;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        const double t = traj.time.values[k];
        const double e = traj.reference.values[k] - traj.output.values[k];
        m.iae += std::fabs(e) * h;
        m.itae += t * std::fabs(e) * h;
        const double over = rising ? traj.output.values[k] - sp_final
                                   : sp_final - traj.output.values[k];
        peak = std::max(peak, over);
    }
    m.max_overshoot = peak / span;

    // settling: first sample after which |y - sp_final| stays within 2% of span
    const double band = 0.02 * span;
    bool have = false;
    double t_settle = 0.0;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        if (std::fabs(traj.output.values[k] - sp_final) > band) {
            have = false;
        } else if (!have) {
            have = true;
            t_settle = traj.time.values[k];
        }
    }
    m.settled = have;
    m.settling_time_2pct = have ? t_settle : t_hi;
    return m;
}

}  // namespace pidlab
