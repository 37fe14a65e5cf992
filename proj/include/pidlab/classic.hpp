#pragma once

namespace pidlab {

// Gains for the velocity-form controllers. Unused gains are 0.
struct ClassicGains {
    double kp = 0.0;   // proportional
    double ki = 0.0;   // integral
    double kii = 0.0;  // double integral (PII^2 family)
    double kd = 0.0;   // derivative
};

// Recursion memory. All zeros at t0.
struct ClassicState {
    double u_prev = 0.0;   // u(t-h)
    double e_prev = 0.0;   // e(t-h)
    double e_prev2 = 0.0;  // e(t-2h)
    double i_prev = 0.0;   // running Riemann sum of e (PII^2 family)
};

// Sampled PI, velocity form:
//   u(t) = u(t-h) + kp*(e(t) - e(t-h)) + ki*h*e(t)
double step_pi(ClassicState& state, double e, const ClassicGains& gains, double h);

// Sampled PID, velocity form with backward differences:
//   u(t) = u(t-h) + kp*h*de + ki*h*e + kd*h*dde
//   de  = (e - e_prev)/h,  dde = (e - 2 e_prev + e_prev2)/h^2
double step_pid(ClassicState& state, double e, const ClassicGains& gains, double h);

// Sampled PII^2D, velocity form; the double-integral term uses the Riemann
// sum I(t) = I(t-h) + h*e(t) (current sample included):
//   u(t) = u(t-h) + kp*h*de + ki*h*e + kii*h*I(t) + kd*h*dde
// With kii = kd = 0 this reduces exactly to the PI recursion.
double step_pii2d(ClassicState& state, double e, const ClassicGains& gains, double h);

}  // namespace pidlab
