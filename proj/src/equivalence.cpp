#include "pidlab/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "pidlab/errors.hpp"

namespace pidlab {

ClassicKind classic_counterpart(IntelligentKind kind) {
    switch (kind) {
        case IntelligentKind::iP: return ClassicKind::PI;
        case IntelligentKind::iPD: return ClassicKind::PID;
        case IntelligentKind::iPI: return ClassicKind::PII2;
        case IntelligentKind::iPID: return ClassicKind::PII2D;
    }
    throw DomainError("unknown intelligent kind");
}

std::string to_string(IntelligentKind kind) {
    switch (kind) {
        case IntelligentKind::iP: return "i-P";
        case IntelligentKind::iPD: return "i-PD";
        case IntelligentKind::iPI: return "i-PI";
        case IntelligentKind::iPID: return "i-PID";
    }
    return "?";
}

std::string to_string(ClassicKind kind) {
    switch (kind) {
        case ClassicKind::PI: return "PI";
        case ClassicKind::PID: return "PID";
        case ClassicKind::PII2: return "PII2";
        case ClassicKind::PII2D: return "PII2D";
    }
    return "?";
}

GainCorrespondence map_gains(IntelligentKind kind, const IntelligentConfig& cfg, double h) {
    if (h <= 0.0) throw DomainError("map_gains: h must be positive");
    if (cfg.alpha == 0.0 || !std::isfinite(cfg.alpha))
        throw DomainError("map_gains: alpha must be nonzero and finite");

    const double ah = cfg.alpha * h;
    GainCorrespondence c{kind, classic_counterpart(kind), ClassicGains{}};
    switch (kind) {
        case IntelligentKind::iP:
            c.mapped.kp = -1.0 / ah;
            c.mapped.ki = cfg.K_P / ah;
            break;
        case IntelligentKind::iPD:
            c.mapped.kp = cfg.K_D / ah;
            c.mapped.ki = cfg.K_P / ah;
            c.mapped.kd = -1.0 / ah;
            break;
        case IntelligentKind::iPI:
            c.mapped.kp = -1.0 / ah;
            c.mapped.ki = cfg.K_P / ah;
            c.mapped.kii = cfg.K_I / ah;
            break;
        case IntelligentKind::iPID:
            c.mapped.kp = cfg.K_D / ah;
            c.mapped.ki = cfg.K_P / ah;
            c.mapped.kii = cfg.K_I / ah;
            c.mapped.kd = -1.0 / ah;
            break;
    }
    return c;
}

IntelligentConfig invert_gains(IntelligentKind kind, const ClassicGains& gains,
                               double alpha, double h) {
    if (h <= 0.0) throw DomainError("invert_gains: h must be positive");
    if (alpha == 0.0 || !std::isfinite(alpha))
        throw DomainError("invert_gains: alpha must be nonzero and finite");

    const double ah = alpha * h;
    IntelligentConfig cfg;
    cfg.alpha = alpha;
    cfg.K_P = gains.ki * ah;
    switch (kind) {
        case IntelligentKind::iP:
            cfg.nu = 1;
            break;
        case IntelligentKind::iPI:
            cfg.nu = 1;
            cfg.K_I = gains.kii * ah;
            break;
        case IntelligentKind::iPD:
            cfg.nu = 2;
            cfg.K_D = gains.kp * ah;
            break;
        case IntelligentKind::iPID:
            cfg.nu = 2;
            cfg.K_I = gains.kii * ah;
            cfg.K_D = gains.kp * ah;
            break;
    }
    return cfg;
}

double verify_equivalence(IntelligentKind kind, const IntelligentConfig& cfg,
                          double h, const TimeSeries& e_seq) {
    if (e_seq.empty()) throw DomainError("verify_equivalence: empty error sequence");
    const GainCorrespondence corr = map_gains(kind, cfg, h);

    // classic side
    ClassicState cs;
    // intelligent side, expanded in e exactly as the sampled laws read
    double u_int = 0.0;
    double e1 = 0.0, e2 = 0.0, I = 0.0;

    const double a = cfg.alpha;
    double max_diff = 0.0;
    for (std::size_t k = 0; k < e_seq.size(); ++k) {
        const double e = e_seq.values[k];

        double u_cls;
        switch (corr.classic_kind) {
            case ClassicKind::PI: u_cls = step_pi(cs, e, corr.mapped, h); break;
            case ClassicKind::PID: u_cls = step_pid(cs, e, corr.mapped, h); break;
            default: u_cls = step_pii2d(cs, e, corr.mapped, h); break;
        }

        switch (kind) {
            case IntelligentKind::iP:
                u_int += (-(e - e1) / h + cfg.K_P * e) / a;
                break;
            case IntelligentKind::iPI:
                I += h * e;
                u_int += (-(e - e1) / h + cfg.K_P * e + cfg.K_I * I) / a;
                break;
            case IntelligentKind::iPD:
                u_int += (-(e - 2.0 * e1 + e2) / (h * h) + cfg.K_P * e +
                          cfg.K_D * (e - e1) / h) /
                         a;
                break;
            case IntelligentKind::iPID:
                I += h * e;
                u_int += (-(e - 2.0 * e1 + e2) / (h * h) + cfg.K_P * e + cfg.K_I * I +
                          cfg.K_D * (e - e1) / h) /
                         a;
                break;
        }
        e2 = e1;
        e1 = e;

        max_diff = std::max(max_diff, std::fabs(u_cls - u_int));
    }
    return max_diff;
}

}  // namespace pidlab
