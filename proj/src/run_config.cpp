#include "pidlab/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pidlab/errors.hpp"

namespace pidlab {

namespace {

using nlohmann::json;

// Strict field access: every key consumed is recorded, and the object is
// rejected if any key was never consumed.
class StrictObject {
public:
    StrictObject(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j.is_object()) throw ConfigError(where_ + ": expected an object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    template <typename T>
    T get(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ConfigError(where_ + ": missing key '" + key + "'");
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(where_ + ": bad value for '" + key + "'");
        }
    }

    template <typename T>
    T get_or(const std::string& key, T fallback) {
        return has(key) ? get<T>(key) : fallback;
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ConfigError(where_ + ": missing key '" + key + "'");
        return j_.at(key);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

PlantModel parse_plant(const json& j) {
    StrictObject o(j, "plant");
    const auto kind = o.get<std::string>("kind");
    const double y0 = o.get_or<double>("y0", 0.0);
    PlantModel m;
    if (kind == "nonlinear-cubic") {
        m = PlantModel::nonlinear_cubic(y0);
    } else if (kind == "fopdt") {
        m = PlantModel::fopdt(o.get<double>("k"), o.get<double>("T"), o.get<double>("tau"), y0);
    } else if (kind == "pure-integrator") {
        m = PlantModel::pure_integrator(o.get<int>("nu"), o.get_or<double>("F_true", 0.0),
                                        o.get_or<double>("alpha_true", 1.0), y0);
    } else {
        throw ConfigError("plant: unknown kind '" + kind + "'");
    }
    o.finish();
    return m;
}

json plant_to_json(const PlantModel& m) {
    json j;
    switch (m.kind) {
        case PlantKind::NonlinearCubic:
            j["kind"] = "nonlinear-cubic";
            break;
        case PlantKind::Fopdt:
            j["kind"] = "fopdt";
            j["k"] = m.k;
            j["T"] = m.T;
            j["tau"] = m.tau;
            break;
        case PlantKind::PureIntegrator:
            j["kind"] = "pure-integrator";
            j["nu"] = m.nu;
            j["F_true"] = m.F_true;
            j["alpha_true"] = m.alpha_true;
            break;
    }
    j["y0"] = m.y0;
    return j;
}

ControllerSpec parse_controller(const json& j) {
    StrictObject o(j, "controller");
    const auto kind = o.get<std::string>("kind");
    ControllerSpec spec;
    if (kind == "open-loop") {
        spec = OpenLoopInput{o.get_or<double>("amplitude", 1.0)};
    } else if (kind == "pi" || kind == "pid" || kind == "pii2" || kind == "pii2d") {
        ClassicControllerSpec c;
        c.gains.kp = o.get_or<double>("kp", 0.0);
        c.gains.ki = o.get_or<double>("ki", 0.0);
        if (kind == "pi") {
            c.kind = ClassicKind::PI;
        } else if (kind == "pid") {
            c.kind = ClassicKind::PID;
            c.gains.kd = o.get_or<double>("kd", 0.0);
        } else if (kind == "pii2") {
            c.kind = ClassicKind::PII2;
            c.gains.kii = o.get_or<double>("kii", 0.0);
        } else {
            c.kind = ClassicKind::PII2D;
            c.gains.kii = o.get_or<double>("kii", 0.0);
            c.gains.kd = o.get_or<double>("kd", 0.0);
        }
        spec = c;
    } else if (kind == "i-p" || kind == "i-pi" || kind == "i-pd" || kind == "i-pid") {
        IntelligentConfig c;
        c.nu = (kind == "i-pd" || kind == "i-pid") ? 2 : 1;
        c.alpha = o.get<double>("alpha");
        c.K_P = o.get<double>("KP");
        if (kind == "i-pi" || kind == "i-pid") c.K_I = o.get<double>("KI");
        if (kind == "i-pd" || kind == "i-pid") c.K_D = o.get<double>("KD");
        c.f_window = o.get_or<int>("f_window", 1);
        c.validate();
        spec = c;
    } else {
        throw ConfigError("controller: unknown kind '" + kind + "'");
    }
    o.finish();
    return spec;
}

json controller_to_json(const ControllerSpec& spec) {
    json j;
    if (std::holds_alternative<OpenLoopInput>(spec)) {
        j["kind"] = "open-loop";
        j["amplitude"] = std::get<OpenLoopInput>(spec).amplitude;
    } else if (std::holds_alternative<ClassicControllerSpec>(spec)) {
        const auto& c = std::get<ClassicControllerSpec>(spec);
        switch (c.kind) {
            case ClassicKind::PI:
                j["kind"] = "pi";
                break;
            case ClassicKind::PID:
                j["kind"] = "pid";
                j["kd"] = c.gains.kd;
                break;
            case ClassicKind::PII2:
                j["kind"] = "pii2";
                j["kii"] = c.gains.kii;
                break;
            case ClassicKind::PII2D:
                j["kind"] = "pii2d";
                j["kii"] = c.gains.kii;
                j["kd"] = c.gains.kd;
                break;
        }
        j["kp"] = c.gains.kp;
        j["ki"] = c.gains.ki;
    } else {
        const auto& c = std::get<IntelligentConfig>(spec);
        if (c.nu == 1) {
            j["kind"] = (c.K_I != 0.0) ? "i-pi" : "i-p";
        } else {
            j["kind"] = (c.K_I != 0.0) ? "i-pid" : "i-pd";
        }
        j["alpha"] = c.alpha;
        j["KP"] = c.K_P;
        if (c.K_I != 0.0) j["KI"] = c.K_I;
        if (c.nu == 2) j["KD"] = c.K_D;
        j["f_window"] = c.f_window;
    }
    return j;
}

ReferenceSpec parse_reference(const json& j) {
    StrictObject o(j, "reference");
    ReferenceSpec r;
    const auto mode = o.get_or<std::string>("mode", "step-backward-diff");
    if (mode == "step-backward-diff") {
        r.mode = ReferenceMode::StepBackwardDiff;
    } else if (mode == "smooth-second-order") {
        r.mode = ReferenceMode::SmoothSecondOrder;
    } else {
        throw ConfigError("reference: unknown mode '" + mode + "'");
    }
    r.tau_f = o.get_or<double>("tau_f", 0.5);
    if (o.has("schedule")) {
        const json& sched = o.raw("schedule");
        if (!sched.is_array() || sched.empty())
            throw ConfigError("reference: schedule must be a non-empty array");
        r.schedule.clear();
        for (const auto& entry : sched) {
            if (!entry.is_array() || entry.size() != 2)
                throw ConfigError("reference: each schedule entry is [time, setpoint]");
            r.schedule.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    o.finish();
    return r;
}

json reference_to_json(const ReferenceSpec& r) {
    json j;
    j["mode"] = r.mode == ReferenceMode::StepBackwardDiff ? "step-backward-diff"
                                                          : "smooth-second-order";
    j["tau_f"] = r.tau_f;
    json sched = json::array();
    for (const auto& [t, sp] : r.schedule) sched.push_back(json::array({t, sp}));
    j["schedule"] = sched;
    return j;
}

FaultModel parse_fault(const json& j) {
    StrictObject o(j, "fault");
    const auto kind = o.get<std::string>("kind");
    FaultModel f;
    if (kind == "none") {
        f = FaultModel::none();
    } else if (kind == "power-loss") {
        f = FaultModel::power_loss(o.get<double>("onset"), o.get<double>("decay"));
    } else {
        throw ConfigError("fault: unknown kind '" + kind + "'");
    }
    o.finish();
    return f;
}

json fault_to_json(const FaultModel& f) {
    json j;
    if (f.kind == FaultKind::None) {
        j["kind"] = "none";
    } else {
        j["kind"] = "power-loss";
        j["onset"] = f.onset;
        j["decay"] = f.decay;
    }
    return j;
}

NoiseModel parse_noise(const json& j) {
    StrictObject o(j, "noise");
    const auto kind = o.get<std::string>("kind");
    NoiseModel m;
    if (kind == "none") {
        m = NoiseModel::none();
    } else if (kind == "gaussian") {
        m = NoiseModel::gaussian(o.get<double>("std"), o.get<std::uint64_t>("seed"));
    } else {
        throw ConfigError("noise: unknown kind '" + kind + "'");
    }
    o.finish();
    return m;
}

json noise_to_json(const NoiseModel& m) {
    json j;
    if (m.kind == NoiseKind::None) {
        j["kind"] = "none";
    } else {
        j["kind"] = "gaussian";
        j["std"] = m.std;
        j["seed"] = m.seed;
    }
    return j;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    StrictObject o(j, "config");
    RunConfig rc;
    rc.scenario.name = o.get_or<std::string>("name", "custom");
    rc.scenario.plant = parse_plant(o.raw("plant"));
    rc.scenario.controller = parse_controller(o.raw("controller"));
    if (o.has("reference")) rc.scenario.reference = parse_reference(o.raw("reference"));
    if (o.has("fault")) rc.scenario.fault = parse_fault(o.raw("fault"));
    if (o.has("noise")) rc.scenario.noise = parse_noise(o.raw("noise"));
    rc.scenario.h = o.get_or<double>("h", 0.01);
    rc.scenario.duration = o.get_or<double>("duration", 6.0);
    rc.scenario.substeps = o.get_or<int>("substeps", 10);
    rc.scenario.denoise_window = o.get_or<int>("denoise_window", 50);
    rc.output = o.get_or<std::string>("output", "");
    o.finish();

    rc.scenario.validate();
    return rc;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string RunConfig::to_json_text() const {
    json j;
    j["name"] = scenario.name;
    j["plant"] = plant_to_json(scenario.plant);
    j["controller"] = controller_to_json(scenario.controller);
    j["reference"] = reference_to_json(scenario.reference);
    j["fault"] = fault_to_json(scenario.fault);
    j["noise"] = noise_to_json(scenario.noise);
    j["h"] = scenario.h;
    j["duration"] = scenario.duration;
    j["substeps"] = scenario.substeps;
    j["denoise_window"] = scenario.denoise_window;
    j["output"] = output;
    return j.dump(2) + "\n";
}

}  // namespace pidlab
