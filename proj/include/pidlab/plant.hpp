#pragma once

#include <cstdint>
#include <vector>

#include "pidlab/time_series.hpp"

namespace pidlab {

enum class PlantKind {
    NonlinearCubic,  // y' + y^3 = 2u (fixed form, no parameters)
    Fopdt,           // k e^{-tau s} / (1 + T s)
    PureIntegrator,  // y^(nu) = F_true + alpha_true * u, nu in {1,2}
};

struct PlantModel {
    PlantKind kind = PlantKind::NonlinearCubic;
    // fopdt parameters
    double k = 1.0;
    double T = 1.0;
    double tau = 0.0;
    // pure-integrator parameters
    int nu = 1;
    double F_true = 0.0;
    double alpha_true = 1.0;
    // initial output
    double y0 = 0.0;

    static PlantModel nonlinear_cubic(double y0 = 0.0);
    static PlantModel fopdt(double k, double T, double tau, double y0 = 0.0);
    static PlantModel pure_integrator(int nu, double F_true, double alpha_true,
                                      double y0 = 0.0);

    // dimension of the continuous state (1 for cubic/fopdt, nu for integrator)
    int state_dim() const;
};

enum class FaultKind { None, PowerLoss };

// Multiplicative actuator power loss: for t > onset the applied control is
// decay^(t/h) * u; identity otherwise. The boundary t == onset is not faulted
// (strict inequality).
struct FaultModel {
    FaultKind kind = FaultKind::None;
    double onset = 4.0;
    double decay = 0.996;  // per-sample factor, in (0, 1]

    static FaultModel none() { return {}; }
    static FaultModel power_loss(double onset, double decay);
};

double apply_fault(const FaultModel& fault, double u, double t, double h);

enum class NoiseKind { None, Gaussian };

// Measurement noise stream. Gaussian samples come from a seeded Box-Muller
// transform over a self-contained splitmix64 generator so identical seeds
// give bit-identical streams on any platform.
struct NoiseModel {
    NoiseKind kind = NoiseKind::None;
    double std = 0.01;
    std::uint64_t seed = 0;

    static NoiseModel none() { return {}; }
    static NoiseModel gaussian(double std, std::uint64_t seed);
};

// Stateful generator over a NoiseModel; one instance per simulation run.
class NoiseStream {
public:
    explicit NoiseStream(const NoiseModel& model);
    double next();

private:
    NoiseModel model_;
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// One classical RK4 advance of the model state with u held constant over dt.
// Throws DivergenceError (time unknown to this level, reported as 0) if the
// state is or becomes non-finite.
std::vector<double> rk4_step(const PlantModel& model, const std::vector<double>& state,
                             double u_held, double dt);

// Continuous plant integrated under zero-order hold. Owns the internal state
// and, for FOPDT, the input delay line (a ring buffer of ceil(tau/dt)
// sub-steps, so the step response is exactly zero for t < tau to within one
// sub-step).
class PlantSim {
public:
    PlantSim(const PlantModel& model, int substeps, double h);

    double output() const;                  // current true (noise-free) output
    void advance(double u_applied);         // integrate one control interval h
    double time() const { return t_; }

private:
    PlantModel model_;
    int substeps_;
    double h_, dt_, t_ = 0.0;
    std::vector<double> state_;
    std::vector<double> delay_line_;  // FOPDT only
    std::size_t delay_pos_ = 0;
};

// Open-loop response sampled at the controller rate input.h; each interval
// integrated with `substeps` RK4 sub-steps. Noise perturbs the returned
// measurements only, never the internal state. Throws DivergenceError with
// the blow-up time.
TimeSeries simulate_open_loop(const PlantModel& model, const TimeSeries& input,
                              int substeps, const NoiseModel& noise);

}  // namespace pidlab
