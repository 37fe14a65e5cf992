// pidlab: scenario runner, Broida identification, gain mapping, and
// equivalence checking for the sampled classic / intelligent controller pair.
//
// Exit codes: 0 success, 1 check failed (tolerance, unsettled, degenerate),
// 2 usage or domain error, 3 plant divergence.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "pidlab/csv_io.hpp"
#include "pidlab/equivalence.hpp"
#include "pidlab/errors.hpp"
#include "pidlab/run_config.hpp"
#include "pidlab/scenario.hpp"
#include "pidlab/tuning.hpp"

namespace fs = std::filesystem;
using namespace pidlab;

namespace {

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

IntelligentKind parse_intelligent_kind(const std::string& name) {
    const std::string k = lower(name);
    if (k == "i-p") return IntelligentKind::iP;
    if (k == "i-pi") return IntelligentKind::iPI;
    if (k == "i-pd") return IntelligentKind::iPD;
    if (k == "i-pid") return IntelligentKind::iPID;
    throw DomainError("unknown intelligent controller kind '" + name +
                      "' (expected i-P, i-PI, i-PD or i-PID)");
}

IntelligentConfig build_intelligent(IntelligentKind kind, double alpha, double K_P,
                                    double K_I, double K_D) {
    IntelligentConfig cfg;
    cfg.nu = (kind == IntelligentKind::iPD || kind == IntelligentKind::iPID) ? 2 : 1;
    cfg.alpha = alpha;
    cfg.K_P = K_P;
    cfg.K_I = K_I;
    cfg.K_D = K_D;
    cfg.validate();
    return cfg;
}

void print_gains(const GainCorrespondence& g) {
    std::printf("kp=%s\n", format_double(g.mapped.kp).c_str());
    std::printf("ki=%s\n", format_double(g.mapped.ki).c_str());
    if (g.classic_kind == ClassicKind::PII2 || g.classic_kind == ClassicKind::PII2D)
        std::printf("kii=%s\n", format_double(g.mapped.kii).c_str());
    if (g.classic_kind == ClassicKind::PID || g.classic_kind == ClassicKind::PII2D)
        std::printf("kd=%s\n", format_double(g.mapped.kd).c_str());
}

// Runs one scenario and writes its trajectory CSV, metrics summary, and
// per-panel plot data under out_dir. Returns 0 or 3 (divergence).
int run_one_scenario(const Scenario& s, const fs::path& out_dir,
                     const std::string& base_override) {
    const auto [traj, metrics] = run_scenario(s);
    const std::string base = base_override.empty() ? s.name : base_override;
    fs::create_directories(out_dir);

    const fs::path csv = out_dir / (base + ".csv");
    write_trajectory_csv(traj, csv.string());

    std::vector<std::pair<std::string, std::string>> extra;
    if (s.fault.kind != FaultKind::None) {
        try {
            const Metrics fm =
                compute_metrics(traj, std::pair<double, double>{s.fault.onset, s.duration});
            extra.emplace_back("iae_fault_window", format_double(fm.iae));
        } catch (const DomainError&) {
            // run ended before the fault window opened; nothing to report
        }
    }
    if (traj.diverged) {
        extra.emplace_back("diverged", "1");
        extra.emplace_back("diverged_at", format_double(traj.diverged_at));
    }
    write_metrics(metrics, (out_dir / (base + "_metrics.txt")).string(), extra);

    write_series(traj.output, (out_dir / (base + "_output.dat")).string(), "time output");
    write_series(traj.reference, (out_dir / (base + "_reference.dat")).string(),
                 "time reference");
    write_series(traj.control_applied, (out_dir / (base + "_control.dat")).string(),
                 "time control");
    if (std::holds_alternative<IntelligentConfig>(s.controller))
        write_series(traj.f_estimate, (out_dir / (base + "_festimate.dat")).string(),
                     "time f_estimate");

    if (traj.diverged) {
        std::fprintf(stderr, "%s: plant diverged at t=%s; partial trajectory in %s\n",
                     s.name.c_str(), format_double(traj.diverged_at).c_str(),
                     csv.string().c_str());
        return 3;
    }
    std::printf("%s: iae=%s itae=%s overshoot=%s settled=%s wrote %s\n", s.name.c_str(),
                format_double(metrics.iae).c_str(), format_double(metrics.itae).c_str(),
                format_double(metrics.max_overshoot).c_str(),
                metrics.settled ? format_double(metrics.settling_time_2pct).c_str() : "no",
                csv.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pidlab: sampled PI/PID controllers, their model-free intelligent "
        "counterparts, gain correspondence, Broida identification, and "
        "closed-loop scenario runs"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print help");  // frees -h / --h for the sampling interval

    std::string out_dir = ".";
    std::string config_path;
    double h = 0.01;
    std::uint64_t seed = 42;
    app.add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
    app.add_option("--config", config_path, "Scenario config file (JSON)");
    auto* h_opt = app.add_option("--h", h, "Sampling interval override [s]");
    auto* seed_opt = app.add_option("--seed", seed, "Seed override (noise / error sequence)");

    auto* sc = app.add_subcommand(
        "scenario", "Run a builtin or configured experiment; write CSV, metrics, plot data");
    sc->fallthrough();
    std::string sc_name;
    bool sc_all = false;
    sc->add_option("name", sc_name, "Builtin scenario name or config file path");
    sc->add_flag("--all", sc_all, "Run every builtin scenario");

    auto* mg = app.add_subcommand(
        "map-gains", "Print the classic gains equivalent to an intelligent controller");
    mg->fallthrough();
    std::string mg_kind;
    double mg_alpha = 1.0, mg_KP = 0.0, mg_KI = 0.0, mg_KD = 0.0;
    mg->add_option("kind", mg_kind, "i-P | i-PI | i-PD | i-PID")->required();
    mg->add_option("--alpha", mg_alpha, "Control gain of the ultra-local model")->required();
    mg->add_option("--KP", mg_KP, "Intelligent proportional gain")->required();
    mg->add_option("--KI", mg_KI, "Intelligent integral gain");
    mg->add_option("--KD", mg_KD, "Intelligent derivative gain");

    auto* vf = app.add_subcommand(
        "verify", "Check the classic/intelligent output identity on a seeded error sequence");
    vf->fallthrough();
    std::string vf_kind;
    double vf_alpha = 1.0, vf_KP = 0.0, vf_KI = 0.0, vf_KD = 0.0, vf_tol = 1e-9;
    int vf_n = 1000;
    vf->add_option("kind", vf_kind, "i-P | i-PI | i-PD | i-PID")->required();
    vf->add_option("--alpha", vf_alpha, "Control gain of the ultra-local model");
    vf->add_option("--KP", vf_KP, "Intelligent proportional gain")->required();
    vf->add_option("--KI", vf_KI, "Intelligent integral gain");
    vf->add_option("--KD", vf_KD, "Intelligent derivative gain");
    vf->add_option("--n", vf_n, "Number of error samples")->capture_default_str();
    vf->add_option("--tol", vf_tol, "Pass threshold on max |u_classic - u_intelligent|")
        ->capture_default_str();

    auto* id = app.add_subcommand(
        "identify", "Fit first-order-plus-dead-time to a step response CSV and tune a PI");
    id->fallthrough();
    std::string id_csv;
    double id_u_step = 1.0;
    double id_y_initial = 0.0;
    id->add_option("csv", id_csv, "Step response: trajectory CSV or two-column time,output")
        ->required();
    id->add_option("--u-step", id_u_step, "Input step amplitude")->capture_default_str();
    auto* id_y0_opt =
        id->add_option("--y-initial", id_y_initial, "Pre-step output (default: first sample)");

    auto* sim = app.add_subcommand(
        "simulate", "Open-loop run from a config file; write a time,output series");
    sim->fallthrough();
    std::string sim_cfg;
    sim->add_option("config", sim_cfg, "Config file path (or use --config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help/version exit 0; any parse failure is usage error
    }

    try {
        if (sc->parsed()) {
            std::vector<std::pair<Scenario, std::string>> runs;  // scenario, output base
            if (sc_all) {
                if (!sc_name.empty() || !config_path.empty())
                    throw DomainError("scenario: --all excludes a name or --config");
                for (const auto& n : builtin_scenario_names())
                    runs.emplace_back(builtin_scenario(n), "");
            } else if (!config_path.empty() || !sc_name.empty()) {
                std::string source = !config_path.empty() ? config_path : sc_name;
                if (!config_path.empty() && !sc_name.empty())
                    throw DomainError("scenario: give a name or --config, not both");
                const auto& names = builtin_scenario_names();
                const bool builtin =
                    std::find(names.begin(), names.end(), source) != names.end();
                if (builtin) {
                    runs.emplace_back(builtin_scenario(source), "");
                } else if (fs::exists(source)) {
                    RunConfig rc = RunConfig::from_file(source);
                    runs.emplace_back(rc.scenario, rc.output);
                } else {
                    throw DomainError("unknown scenario '" + source +
                                      "' (not a builtin, not a file)");
                }
            } else {
                throw DomainError("scenario: name, --config, or --all required");
            }

            int worst = 0;
            for (auto& [s, base] : runs) {
                if (h_opt->count() > 0) s.h = h;
                if (seed_opt->count() > 0 && s.noise.kind == NoiseKind::Gaussian)
                    s.noise.seed = seed;
                worst = std::max(worst, run_one_scenario(s, out_dir, base));
            }
            return worst;
        }

        if (mg->parsed()) {
            const IntelligentKind kind = parse_intelligent_kind(mg_kind);
            const IntelligentConfig cfg =
                build_intelligent(kind, mg_alpha, mg_KP, mg_KI, mg_KD);
            print_gains(map_gains(kind, cfg, h));
            return 0;
        }

        if (vf->parsed()) {
            if (vf_n <= 0) throw DomainError("verify: --n must be positive");
            const IntelligentKind kind = parse_intelligent_kind(vf_kind);
            const IntelligentConfig cfg =
                build_intelligent(kind, vf_alpha, vf_KP, vf_KI, vf_KD);
            TimeSeries e_seq;
            e_seq.h = h;
            NoiseStream stream(NoiseModel::gaussian(1.0, seed));
            for (int i = 0; i < vf_n; ++i) e_seq.values.push_back(stream.next());
            const double diff = verify_equivalence(kind, cfg, h, e_seq);
            std::printf("max_abs_diff=%s\n", format_double(diff).c_str());
            if (diff <= vf_tol) return 0;
            std::fprintf(stderr, "verify: max_abs_diff exceeds tolerance %s\n",
                         format_double(vf_tol).c_str());
            return 1;
        }

        if (id->parsed()) {
            const TimeSeries response = read_response_csv(id_csv);
            const double y0 = id_y0_opt->count() > 0
                                  ? id_y_initial
                                  : (response.empty() ? 0.0 : response.values.front());
            const FopdtFit fit = identify_broida(response, id_u_step, y0);
            bool floored = false;
            const ClassicGains tuned = tune_pi_broida(fit, 0.001, &floored);
            if (floored)
                std::fprintf(stderr,
                             "warning: estimated dead time below floor, clamped to 0.001 s "
                             "for tuning\n");
            std::printf("k=%s\n", format_double(fit.k).c_str());
            std::printf("T=%s\n", format_double(fit.T).c_str());
            std::printf("tau=%s\n", format_double(fit.tau).c_str());
            std::printf("kp=%s\n", format_double(tuned.kp).c_str());
            std::printf("ki=%s\n", format_double(tuned.ki).c_str());
            return 0;
        }

        if (sim->parsed()) {
            const std::string source = !sim_cfg.empty() ? sim_cfg : config_path;
            if (source.empty()) throw DomainError("simulate: config file required");
            RunConfig rc = RunConfig::from_file(source);
            Scenario& s = rc.scenario;
            if (!std::holds_alternative<OpenLoopInput>(s.controller))
                throw DomainError("simulate: config must use an open-loop controller");
            if (h_opt->count() > 0) s.h = h;
            if (seed_opt->count() > 0 && s.noise.kind == NoiseKind::Gaussian)
                s.noise.seed = seed;
            s.validate();

            const auto n = static_cast<std::size_t>(std::llround(s.duration / s.h)) + 1;
            TimeSeries input;
            input.h = s.h;
            input.values.assign(n, std::get<OpenLoopInput>(s.controller).amplitude);
            const TimeSeries y =
                simulate_open_loop(s.plant, input, s.substeps, s.noise);

            const std::string base = rc.output.empty() ? s.name : rc.output;
            fs::create_directories(out_dir);
            const fs::path path = fs::path(out_dir) / (base + "_openloop.csv");
            write_response_csv(y, path.string());
            std::printf("y_final=%s wrote %s\n", format_double(y.values.back()).c_str(),
                        path.string().c_str());
            return 0;
        }

        return 2;  // unreachable: require_subcommand(1)
    } catch (const DivergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const NotSettledError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const DegenerateResponseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
