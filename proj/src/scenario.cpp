#include "pidlab/scenario.hpp"

#include <cmath>
#include <cstddef>
#include <deque>

#include "pidlab/errors.hpp"

namespace pidlab {

void Scenario::validate() const {
    if (duration <= 0.0) throw DomainError("scenario: duration must be positive");
    if (h <= 0.0) throw DomainError("scenario: h must be positive");
    if (substeps < 1) throw DomainError("scenario: substeps must be >= 1");
    if (denoise_window < 1) throw DomainError("scenario: denoise_window must be >= 1");
    const double n = std::round(duration / h);
    if (std::fabs(n * h - duration) > h)
        throw DomainError("scenario: h must divide duration within one sample");
    if (std::holds_alternative<IntelligentConfig>(controller))
        std::get<IntelligentConfig>(controller).validate();
}

namespace {

// Incremental causal trailing mean (the denoised-output column).
class TrailingMean {
public:
    explicit TrailingMean(int window) : window_(static_cast<std::size_t>(window)) {}
    double push(double v) {
        buf_.push_back(v);
        if (buf_.size() > window_) buf_.pop_front();
        double sum = 0.0;
        for (double x : buf_) sum += x;
        return sum / static_cast<double>(buf_.size());
    }

private:
    std::size_t window_;
    std::deque<double> buf_;
};

}  // namespace

std::pair<Trajectory, Metrics> run_scenario(const Scenario& s) {
    s.validate();

    const std::size_t n = static_cast<std::size_t>(std::llround(s.duration / s.h)) + 1;
    const ReferenceTrajectory ref =
        make_reference(s.reference.schedule, s.h, s.duration, s.reference.mode, s.reference.tau_f);
    const TimeSeries setpoint = make_setpoint_series(s.reference.schedule, s.h, s.duration);

    Trajectory traj;
    for (TimeSeries* ts : {&traj.time, &traj.setpoint, &traj.reference, &traj.output,
                           &traj.output_denoised, &traj.control_commanded,
                           &traj.control_applied, &traj.f_estimate}) {
        ts->h = s.h;
        ts->t0 = 0.0;
        ts->values.reserve(n);
    }

    PlantSim sim(s.plant, s.substeps, s.h);
    NoiseStream noise(s.noise);
    TrailingMean denoiser(s.denoise_window);
    ClassicState classic_state;
    IntelligentState intelligent_state;

    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * s.h;
        const double y_meas = sim.output() + noise.next();
        const double y_den = denoiser.push(y_meas);

        double u_cmd = 0.0;
        double f_est = 0.0;
        if (std::holds_alternative<OpenLoopInput>(s.controller)) {
            u_cmd = std::get<OpenLoopInput>(s.controller).amplitude;
        } else if (std::holds_alternative<ClassicControllerSpec>(s.controller)) {
            const auto& spec = std::get<ClassicControllerSpec>(s.controller);
            const double e = ref.y_star.values[k] - y_meas;
            switch (spec.kind) {
                case ClassicKind::PI:
                    u_cmd = step_pi(classic_state, e, spec.gains, s.h);
                    break;
                case ClassicKind::PID:
                    u_cmd = step_pid(classic_state, e, spec.gains, s.h);
                    break;
                default:
                    u_cmd = step_pii2d(classic_state, e, spec.gains, s.h);
                    break;
            }
        } else {
            const auto& cfg = std::get<IntelligentConfig>(s.controller);
            const RefSample r{ref.y_star.values[k], ref.d1_y_star.values[k],
                              ref.d2_y_star.values[k]};
            FEstimate f;
            u_cmd = step_intelligent(intelligent_state, y_meas, r, cfg, s.h, &f);
            f_est = f.value;
        }

        const double u_app = apply_fault(s.fault, u_cmd, t, s.h);

        traj.time.values.push_back(t);
        traj.setpoint.values.push_back(setpoint.values[k]);
        traj.reference.values.push_back(ref.y_star.values[k]);
        traj.output.values.push_back(y_meas);
        traj.output_denoised.values.push_back(y_den);
        traj.control_commanded.values.push_back(u_cmd);
        traj.control_applied.values.push_back(u_app);
        traj.f_estimate.values.push_back(f_est);

        if (k + 1 < n) {
            try {
                sim.advance(u_app);
            } catch (const DivergenceError& err) {
                traj.diverged = true;
                traj.diverged_at = err.time;
                break;
            }
        }
    }

    Metrics m = compute_metrics(traj);
    return {std::move(traj), m};
}

Scenario builtin_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    s.plant = PlantModel::nonlinear_cubic();
    s.noise = NoiseModel::none();
    s.fault = FaultModel::none();
    s.duration = 6.0;
    s.h = 0.01;

    const ClassicGains study_pi{6.350, 15.817, 0.0, 0.0};
    IntelligentConfig study_ipi;
    study_ipi.nu = 1;
    study_ipi.alpha = 1.0;
    study_ipi.K_P = 6.0;
    study_ipi.K_I = 9.0;
    // Two-sample averaging of the raw F estimates: the bare one-sample
    // estimate leaves the estimator loop marginally stable on this plant
    // (true input gain 2 against alpha = 1) and the loop rings apart at the
    // unit operating point; see README for the analysis.
    study_ipi.f_window = 2;

    if (name == "open-loop") {
        s.controller = OpenLoopInput{1.0};
        s.reference.schedule = {{0.0, 1.0}};
        s.duration = 10.0;
    } else if (name == "pi-nominal") {
        s.controller = ClassicControllerSpec{ClassicKind::PI, study_pi};
        s.reference.schedule = {{0.0, 1.0}};
    } else if (name == "ipi-nominal") {
        s.controller = study_ipi;
        s.reference.schedule = {{0.0, 1.0}};
    } else if (name == "pi-large-setpoint") {
        s.controller = ClassicControllerSpec{ClassicKind::PI, study_pi};
        s.reference.schedule = {{0.0, 5.0}};
    } else if (name == "ipi-large-setpoint") {
        s.controller = study_ipi;
        s.reference.schedule = {{0.0, 5.0}};
    } else if (name == "pi-power-loss") {
        s.controller = ClassicControllerSpec{ClassicKind::PI, study_pi};
        s.reference.schedule = {{0.0, 1.0}};
        s.fault = FaultModel::power_loss(4.0, 0.996);
        s.duration = 12.0;
    } else if (name == "ipi-power-loss") {
        s.controller = study_ipi;
        s.reference.schedule = {{0.0, 1.0}};
        s.fault = FaultModel::power_loss(4.0, 0.996);
        s.duration = 12.0;
    } else {
        throw DomainError("unknown builtin scenario: " + name);
    }
    return s;
}

std::vector<std::string> builtin_scenario_names() {
    return {"open-loop",          "pi-nominal",      "ipi-nominal", "pi-large-setpoint",
            "ipi-large-setpoint", "pi-power-loss",   "ipi-power-loss"};
}

}  // namespace pidlab
