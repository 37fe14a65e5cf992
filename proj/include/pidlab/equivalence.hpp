#pragma once

#include <string>

#include "pidlab/classic.hpp"
#include "pidlab/intelligent.hpp"
#include "pidlab/time_series.hpp"

namespace pidlab {

enum class IntelligentKind { iP, iPD, iPI, iPID };

// The classic controller paired with each intelligent kind.
enum class ClassicKind { PI, PID, PII2, PII2D };

ClassicKind classic_counterpart(IntelligentKind kind);
std::string to_string(IntelligentKind kind);
std::string to_string(ClassicKind kind);

// One column of the gain-correspondence table.
struct GainCorrespondence {
    IntelligentKind intelligent_kind;
    ClassicKind classic_kind;
    ClassicGains mapped;
};

// The correspondence, written in the convention in which both controllers
// act on the same abstract error sequence e:
//   i-P   -> PI    : kp = -1/(alpha h),  ki = K_P/(alpha h)
//   i-PD  -> PID   : kp = K_D/(alpha h), ki = K_P/(alpha h), kd = -1/(alpha h)
//   i-PI  -> PII^2 : kp = -1/(alpha h),  ki = K_P/(alpha h), kii = K_I/(alpha h)
//   i-PID -> PII^2D: kp = K_D/(alpha h), ki = K_P/(alpha h), kii = K_I/(alpha h),
//                    kd = -1/(alpha h)
// The -1/(alpha h) entry always multiplies the error difference of order nu;
// it is strictly negative whenever alpha > 0 and h > 0 (the sign that makes
// the mapped classic gains look "wrong" to a classically trained eye).
GainCorrespondence map_gains(IntelligentKind kind, const IntelligentConfig& cfg, double h);

// Inverse of map_gains for fixed (alpha, h): recovers (K_P, K_I, K_D) from a
// mapped classic gain set. map_gains(invert_gains(g)) == g.
IntelligentConfig invert_gains(IntelligentKind kind, const ClassicGains& gains,
                               double alpha, double h);

// Drives the sampled intelligent recursion (expanded in e) and the classic
// recursion with the mapped gains over the same error sequence, both
// zero-initialized, and returns max over samples of |u_classic - u_intelligent|.
// The identity is exact in exact arithmetic; floating-point non-associativity
// between the two expression arrangements is the only residual.
double verify_equivalence(IntelligentKind kind, const IntelligentConfig& cfg,
                          double h, const TimeSeries& e_seq);

}  // namespace pidlab
