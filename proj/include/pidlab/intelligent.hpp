#pragma once

#include <array>
#include <vector>

namespace pidlab {

// Configuration of a model-free controller built on the ultra-local model
// y^(nu) = F + alpha*u. K_D is meaningful only when nu = 2.
//
// f_window is the number of most recent raw F estimates averaged into the
// value the control law uses. 1 (the default) is the bare one-sample
// estimate; 2 is enough to damp the alternating estimator mode that appears
// when alpha underestimates the true input gain by a factor approaching 2.
struct IntelligentConfig {
    int nu = 1;          // derivation order, 1 or 2
    double alpha = 1.0;  // control effectiveness, nonzero
    double K_P = 0.0;
    double K_I = 0.0;
    double K_D = 0.0;    // nu = 1 implies K_D = 0
    int f_window = 1;    // >= 1

    void validate() const;  // throws DomainError on violation
};

// Recursion memory. Zero-initialized; y_hist keeps the last nu+1 outputs,
// newest first. f_hist holds the last f_window raw F estimates.
struct IntelligentState {
    double u_prev = 0.0;
    std::array<double, 3> y_hist{0.0, 0.0, 0.0};  // y(t), y(t-h), y(t-2h)
    double i_prev = 0.0;                          // Riemann sum of e
    double e_prev = 0.0;
    std::vector<double> f_hist;                   // raw estimates, oldest first
};

// Estimated structural term F of the ultra-local model.
struct FEstimate {
    double value = 0.0;  // units of y^(nu)
};

// One reference sample: y*(t) and its first two derivatives.
struct RefSample {
    double y_star = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

// Raw one-sample estimate from measured outputs and the previously
// commanded control:
//   nu=1: F = (y(t) - y(t-h))/h - alpha*u(t-h)
//   nu=2: F = (y(t) - 2y(t-h) + y(t-2h))/h^2 - alpha*u(t-h)
// y_hist is newest-first and must hold nu+1 valid samples.
FEstimate estimate_F(const std::array<double, 3>& y_hist, double u_prev,
                     const IntelligentConfig& cfg, double h);

// One controller step. e(t) = y*(t) - y(t) is the tracking error (setpoint
// minus measurement: the sign under which positive K_P gives the contracting
// closed-loop error e(t) = (1 - K_P h) e(t-h) on the matched integrator).
// The control law inverts the ultra-local model:
//   u = (1/alpha) * (-F + y*^(nu) + K_P e + K_I I + K_D de)
// with I the Riemann sum I(t-h) + h e(t) and de the backward difference of e.
// F is the mean of the last f_window raw estimates (identity when 1).
// After a fault scales the applied control, u_prev still stores the
// commanded value: the controller sees the fault only through y.
double step_intelligent(IntelligentState& state, double y, const RefSample& ref,
                        const IntelligentConfig& cfg, double h, FEstimate* f_out = nullptr);

}  // namespace pidlab
