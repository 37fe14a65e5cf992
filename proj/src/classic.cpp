#include "pidlab/classic.hpp"

#include "pidlab/errors.hpp"

namespace pidlab {

// The h factors on the difference terms are cancelled symbolically
// (kp*h*(de/h) == kp*de), so step_pid with kd=0 and step_pii2d with
// kii=kd=0 reproduce step_pi bit-for-bit.

double step_pi(ClassicState& state, double e, const ClassicGains& gains, double h) {
    if (h <= 0.0) throw DomainError("step_pi: h must be positive");
    const double u = state.u_prev + gains.kp * (e - state.e_prev) + gains.ki * h * e;
    state.e_prev2 = state.e_prev;
    state.e_prev = e;
    state.u_prev = u;
    return u;
}

double step_pid(ClassicState& state, double e, const ClassicGains& gains, double h) {
    if (h <= 0.0) throw DomainError("step_pid: h must be positive");
    const double u = state.u_prev + gains.kp * (e - state.e_prev) + gains.ki * h * e +
                     gains.kd * (e - 2.0 * state.e_prev + state.e_prev2) / h;
    state.e_prev2 = state.e_prev;
    state.e_prev = e;
    state.u_prev = u;
    return u;
}

double step_pii2d(ClassicState& state, double e, const ClassicGains& gains, double h) {
    if (h <= 0.0) throw DomainError("step_pii2d: h must be positive");
    const double i_now = state.i_prev + h * e;  // Riemann sum, current sample included
    const double u = state.u_prev + gains.kp * (e - state.e_prev) + gains.ki * h * e +
                     gains.kii * h * i_now +
                     gains.kd * (e - 2.0 * state.e_prev + state.e_prev2) / h;
    state.i_prev = i_now;
    state.e_prev2 = state.e_prev;
    state.e_prev = e;
    state.u_prev = u;
    return u;
}

}  // namespace pidlab
