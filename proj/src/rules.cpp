#include "pond/rules.hpp"

#include <algorithm>
#include <cmath>

#include "pond/errors.hpp"

namespace pond {

double emptying_time(const PondState& state, const PondParams& params, TeMode mode) {
    switch (mode) {
        case TeMode::DrainAtQmax: return params.area * state.depth / params.q_max;
        case TeMode::PaperLiteral: return state.depth * params.area / params.h_max * 360.0;
    }
    return 0.0;
}

RuleDecision select_rule(const DryContext& ctx, const PondParams& params) {
    if (!(ctx.t_next_rain >= 0.0) || !(ctx.t_e >= 0.0) || !(ctx.settle_time > 0.0) || ctx.now < ctx.t_f)
        throw PreconditionError("invalid dry-period context");

    RuleDecision d;
    if (ctx.t_next_rain <= ctx.t_e) {
        d.kind = RuleKind::EmptyAtMax;
        d.fraction = 1.0;
    } else if (ctx.t_next_rain <= ctx.t_e + ctx.settle_time) {
        d.kind = RuleKind::ProportionalRelease;
        const double since_rain = ctx.now - ctx.t_f;
        const double denom = ctx.t_next_rain - since_rain;
        if (denom == 0.0) {
            d.fraction = 1.0;
            d.degenerate = true;
        } else {
            d.fraction = std::clamp((ctx.t_e - since_rain) / denom, 0.0, 1.0);
        }
    } else {
        d.kind = RuleKind::HoldClosed;
        d.fraction = 0.0;
    }
    d.outflow = d.kind == RuleKind::EmptyAtMax ? params.q_max
              : d.kind == RuleKind::HoldClosed ? 0.0
                                               : d.fraction * params.q_max;
    return d;
}

const char* to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::EmptyAtMax: return "empty_at_max";
        case RuleKind::ProportionalRelease: return "proportional";
        case RuleKind::HoldClosed: return "hold_closed";
    }
    return "unknown";
}

}  // namespace pond
