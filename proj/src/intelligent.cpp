#include "pidlab/intelligent.hpp"

#include <cmath>

#include "pidlab/errors.hpp"

namespace pidlab {

void IntelligentConfig::validate() const {
    if (alpha == 0.0 || !std::isfinite(alpha))
        throw DomainError("intelligent config: alpha must be nonzero and finite");
    if (nu != 1 && nu != 2) throw DomainError("intelligent config: nu must be 1 or 2");
    if (nu == 1 && K_D != 0.0) throw DomainError("intelligent config: K_D requires nu=2");
    if (f_window < 1) throw DomainError("intelligent config: f_window must be >= 1");
}

FEstimate estimate_F(const std::array<double, 3>& y_hist, double u_prev,
                     const IntelligentConfig& cfg, double h) {
    if (h <= 0.0) throw DomainError("estimate_F: h must be positive");
    cfg.validate();
    double dnu;
    if (cfg.nu == 1) {
        dnu = (y_hist[0] - y_hist[1]) / h;
    } else {
        dnu = (y_hist[0] - 2.0 * y_hist[1] + y_hist[2]) / (h * h);
    }
    return FEstimate{dnu - cfg.alpha * u_prev};
}

double step_intelligent(IntelligentState& state, double y, const RefSample& ref,
                        const IntelligentConfig& cfg, double h, FEstimate* f_out) {
    if (h <= 0.0) throw DomainError("step_intelligent: h must be positive");
    cfg.validate();

    // shift the measurement history: y_hist = (y(t), y(t-h), y(t-2h))
    state.y_hist[2] = state.y_hist[1];
    state.y_hist[1] = state.y_hist[0];
    state.y_hist[0] = y;

    const FEstimate f_raw = estimate_F(state.y_hist, state.u_prev, cfg, h);

    // the control law consumes the mean of the last f_window raw estimates
    state.f_hist.push_back(f_raw.value);
    if (state.f_hist.size() > static_cast<std::size_t>(cfg.f_window))
        state.f_hist.erase(state.f_hist.begin());
    double f_used = 0.0;
    for (double v : state.f_hist) f_used += v;
    f_used /= static_cast<double>(state.f_hist.size());

    const double e = ref.y_star - y;  // tracking error, setpoint minus measurement
    const double de = (e - state.e_prev) / h;
    const double i_now = state.i_prev + h * e;
    const double ystar_nu = (cfg.nu == 1) ? ref.d1 : ref.d2;

    const double u = (-f_used + ystar_nu + cfg.K_P * e + cfg.K_I * i_now + cfg.K_D * de) /
                     cfg.alpha;

    state.e_prev = e;
    state.i_prev = i_now;
    state.u_prev = u;
    if (f_out) *f_out = FEstimate{f_used};
    return u;
}

}  // namespace pidlab
