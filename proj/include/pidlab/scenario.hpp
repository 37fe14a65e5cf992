#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pidlab/classic.hpp"
#include "pidlab/equivalence.hpp"
#include "pidlab/intelligent.hpp"
#include "pidlab/plant.hpp"
#include "pidlab/reference.hpp"
#include "pidlab/time_series.hpp"

namespace pidlab {

// Feed the plant a constant input; no feedback.
struct OpenLoopInput {
    double amplitude = 1.0;
};

// A classic velocity-form controller and which recursion to run it through.
struct ClassicControllerSpec {
    ClassicKind kind = ClassicKind::PI;
    ClassicGains gains;
};

using ControllerSpec = std::variant<OpenLoopInput, ClassicControllerSpec, IntelligentConfig>;

struct ReferenceSpec {
    SetpointSchedule schedule{{0.0, 1.0}};
    ReferenceMode mode = ReferenceMode::StepBackwardDiff;
    double tau_f = 0.5;  // smooth mode only
};

// One named closed-loop (or open-loop) experiment.
struct Scenario {
    std::string name = "custom";
    PlantModel plant;
    ControllerSpec controller;
    ReferenceSpec reference;
    FaultModel fault;
    NoiseModel noise;
    double duration = 6.0;  // seconds, > 0
    double h = 0.01;        // controller sampling interval, > 0
    int substeps = 10;      // RK4 sub-steps per h
    int denoise_window = 50;  // trailing mean behind the output_denoised column

    void validate() const;  // throws DomainError on violation
};

// Full closed-loop record; all series share h and length.
// control_applied[k] == apply_fault(control_commanded[k]).
struct Trajectory {
    TimeSeries time;  // convenience copy of the sample times
    TimeSeries setpoint;
    TimeSeries reference;
    TimeSeries output;
    TimeSeries output_denoised;
    TimeSeries control_commanded;
    TimeSeries control_applied;
    TimeSeries f_estimate;
    bool diverged = false;
    double diverged_at = 0.0;  // meaningful when diverged
};

// Scalar tracking-quality summary over a window. Error is reference - output.
struct Metrics {
    double iae = 0.0;                // integral of |e|, error*s
    double itae = 0.0;               // integral of t*|e|
    double max_overshoot = 0.0;      // fraction of setpoint span
    double settling_time_2pct = 0.0; // seconds; valid when settled
    bool settled = false;
};

// Riemann-sum metrics at step h over [t_start, t_end] (defaults to the full
// record). Overshoot and settling are measured against the final setpoint.
// Throws DomainError on an empty window.
Metrics compute_metrics(const Trajectory& traj,
                        std::optional<std::pair<double, double>> window = std::nullopt);

// Runs the closed loop: at each sample, measure y (noise added), step the
// controller on e = reference - measurement, apply the fault to the
// commanded control, then hold the applied control while sub-stepping the
// plant to the next sample. Deterministic given the scenario (seed included).
// Divergence does not throw: the partial trajectory is returned with the
// diverged flag and blow-up time set.
std::pair<Trajectory, Metrics> run_scenario(const Scenario& s);

// The named experiments of the simulation study.
//   open-loop           unit step into the cubic plant, 10 s
//   pi-nominal          PI(6.350, 15.817), unit setpoint, 6 s
//   ipi-nominal         i-PI(alpha=1, K_P=6, K_I=9), unit setpoint, 6 s
//   pi-large-setpoint   same PI, setpoint 5, 6 s
//   ipi-large-setpoint  same i-PI, setpoint 5, 6 s
//   pi-power-loss       unit setpoint, power loss from t=4, 12 s
//   ipi-power-loss      unit setpoint, power loss from t=4, 12 s
// Throws DomainError for an unknown name.
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

}  // namespace pidlab
