#pragma once

#include "pond/hydraulics.hpp"

namespace pond {

enum class TeMode {
    DrainAtQmax,   ///< A H / q_max, the time to drain current storage at full outflow
    PaperLiteral,  ///< H A / h_max * 360, kept verbatim for comparison runs
};

/// Dry-period timing seen by the rule selector; all values in seconds.
struct DryContext {
    double t_next_rain = 0.0;    ///< duration from now until the next forecast rain
    double t_f = 0.0;            ///< clock time at which the previous rain ended
    double now = 0.0;            ///< clock time
    double t_e = 0.0;            ///< emptying time
    double settle_time = 72000.0;
};

enum class RuleKind {
    EmptyAtMax,            ///< next rain arrives before the pond can be emptied
    ProportionalRelease,   ///< drain at a fraction of q_max
    HoldClosed,            ///< keep water for sedimentation
};

struct RuleDecision {
    RuleKind kind = RuleKind::HoldClosed;
    double fraction = 0.0;  ///< share of q_max (1 for EmptyAtMax, 0 for HoldClosed)
    double outflow = 0.0;   ///< m3/s
    bool degenerate = false;  ///< proportional rule hit a zero denominator
};

double emptying_time(const PondState& state, const PondParams& params, TeMode mode = TeMode::DrainAtQmax);

/// Picks exactly one of the three dry-weather rules:
///   t_next_rain <= t_e                    -> EmptyAtMax, q_max
///   t_e < t_next_rain <= t_e + settle     -> q_max * clamp((t_e - s) / (t_next_rain - s), 0, 1)
///   t_next_rain >  t_e + settle           -> HoldClosed, 0
/// where s = now - t_f is the time elapsed since the previous rain ended.
/// A zero denominator releases at q_max and sets `degenerate`.
RuleDecision select_rule(const DryContext& ctx, const PondParams& params);

const char* to_string(RuleKind kind);

}  // namespace pond
