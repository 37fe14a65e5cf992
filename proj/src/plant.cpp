#include "pidlab/plant.hpp"

#include <cmath>
#include <cstddef>

#include "pidlab/errors.hpp"

namespace pidlab {

PlantModel PlantModel::nonlinear_cubic(double y0) {
    PlantModel m;
    m.kind = PlantKind::NonlinearCubic;
    m.y0 = y0;
    return m;
}

PlantModel PlantModel::fopdt(double k, double T, double tau, double y0) {
    if (T <= 0.0) throw DomainError("fopdt: T must be positive");
    if (tau < 0.0) throw DomainError("fopdt: tau must be non-negative");
    PlantModel m;
    m.kind = PlantKind::Fopdt;
    m.k = k;
    m.T = T;
    m.tau = tau;
    m.y0 = y0;
    return m;
}

PlantModel PlantModel::pure_integrator(int nu, double F_true, double alpha_true, double y0) {
    if (nu != 1 && nu != 2) throw DomainError("pure_integrator: nu must be 1 or 2");
    PlantModel m;
    m.kind = PlantKind::PureIntegrator;
    m.nu = nu;
    m.F_true = F_true;
    m.alpha_true = alpha_true;
    m.y0 = y0;
    return m;
}

int PlantModel::state_dim() const {
    return kind == PlantKind::PureIntegrator ? nu : 1;
}

FaultModel FaultModel::power_loss(double onset, double decay) {
    if (decay <= 0.0 || decay > 1.0) throw DomainError("power_loss: decay must be in (0, 1]");
    FaultModel f;
    f.kind = FaultKind::PowerLoss;
    f.onset = onset;
    f.decay = decay;
    return f;
}

double apply_fault(const FaultModel& fault, double u, double t, double h) {
    if (h <= 0.0) throw DomainError("apply_fault: h must be positive");
    if (fault.kind == FaultKind::None || t <= fault.onset) return u;
    return std::pow(fault.decay, t / h) * u;
}

NoiseModel NoiseModel::gaussian(double std, std::uint64_t seed) {
    if (std < 0.0) throw DomainError("gaussian noise: std must be non-negative");
    NoiseModel n;
    n.kind = NoiseKind::Gaussian;
    n.std = std;
    n.seed = seed;
    return n;
}

NoiseStream::NoiseStream(const NoiseModel& model) : model_(model), state_(model.seed) {}

double NoiseStream::next() {
    if (model_.kind == NoiseKind::None || model_.std == 0.0) return 0.0;
    if (have_spare_) {
        have_spare_ = false;
        return model_.std * spare_;
    }
    // splitmix64 over the seed counter feeds a Box-Muller pair; self-contained
    // so identical seeds are bit-identical across standard libraries.
    auto next_u64 = [this]() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    auto next_unit = [&]() {
        // 53-bit mantissa in (0, 1]
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    };
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return model_.std * r * std::cos(a);
}

namespace {

// Right-hand side of the model ODE; u is the (possibly delayed) held input.
void rhs(const PlantModel& m, const std::vector<double>& x, double u, std::vector<double>& dx) {
    switch (m.kind) {
        case PlantKind::NonlinearCubic:
            dx[0] = 2.0 * u - x[0] * x[0] * x[0];
            break;
        case PlantKind::Fopdt:
            dx[0] = (m.k * u - x[0]) / m.T;
            break;
        case PlantKind::PureIntegrator:
            if (m.nu == 1) {
                dx[0] = m.F_true + m.alpha_true * u;
            } else {
                dx[0] = x[1];
                dx[1] = m.F_true + m.alpha_true * u;
            }
            break;
    }
}

bool all_finite(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

std::vector<double> rk4_step(const PlantModel& model, const std::vector<double>& state,
                             double u_held, double dt) {
    if (dt <= 0.0) throw DomainError("rk4_step: dt must be positive");
    if (state.size() != static_cast<std::size_t>(model.state_dim()))
        throw DomainError("rk4_step: state dimension mismatch");
    if (!all_finite(state)) throw DivergenceError(0.0);

    const std::size_t n = state.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n), out(n);

    rhs(model, state, u_held, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
    rhs(model, tmp, u_held, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
    rhs(model, tmp, u_held, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + dt * k3[i];
    rhs(model, tmp, u_held, k4);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    if (!all_finite(out)) throw DivergenceError(0.0);
    return out;
}

PlantSim::PlantSim(const PlantModel& model, int substeps, double h)
    : model_(model), substeps_(substeps), h_(h) {
    if (substeps < 1) throw DomainError("PlantSim: substeps must be >= 1");
    if (h <= 0.0) throw DomainError("PlantSim: h must be positive");
    dt_ = h_ / static_cast<double>(substeps_);
    state_.assign(static_cast<std::size_t>(model_.state_dim()), 0.0);
    state_[0] = model_.y0;

    if (model_.kind == PlantKind::Fopdt && model_.tau > 0.0) {
        // Delay line of ceil(tau/dt) sub-steps. The quotient is snapped to the
        // nearest integer-within-1e-9 first so an exactly divisible tau does
        // not pick up one extra sub-step from floating-point division.
        const double q = model_.tau / dt_;
        auto steps = static_cast<std::size_t>(std::ceil(q - 1e-9));
        if (steps < 1) steps = 1;
        delay_line_.assign(steps, 0.0);
    }
}

double PlantSim::output() const { return state_[0]; }

void PlantSim::advance(double u_applied) {
    try {
        for (int i = 0; i < substeps_; ++i) {
            double u_plant = u_applied;
            if (!delay_line_.empty()) {
                u_plant = delay_line_[delay_pos_];
                delay_line_[delay_pos_] = u_applied;
                delay_pos_ = (delay_pos_ + 1) % delay_line_.size();
            }
            state_ = rk4_step(model_, state_, u_plant, dt_);
            t_ += dt_;
        }
    } catch (const DivergenceError&) {
        throw DivergenceError(t_);  // re-throw with the actual blow-up time
    }
}

TimeSeries simulate_open_loop(const PlantModel& model, const TimeSeries& input,
                              int substeps, const NoiseModel& noise) {
    if (input.empty()) throw DomainError("simulate_open_loop: empty input");

    PlantSim sim(model, substeps, input.h);
    NoiseStream noise_stream(noise);
    TimeSeries out{input.h, input.t0, std::vector<double>(input.size(), 0.0)};
    for (std::size_t k = 0; k < input.size(); ++k) {
        out.values[k] = sim.output() + noise_stream.next();
        if (k + 1 < input.size()) sim.advance(input.values[k]);
    }
    return out;
}

}  // namespace pidlab
