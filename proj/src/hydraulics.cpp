#include "pond/hydraulics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pond/errors.hpp"

namespace pond {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_flow(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0)
        throw PreconditionError(std::string(name) + " must be a non-negative finite flow, got " +
                                std::to_string(v));
}

RouteResult route(const PondState& state, const PondParams& params, double inflow_prev,
                  double inflow_now, double outflow_prev, double outflow_cmd) {
    require_flow(inflow_prev, "inflow_prev");
    require_flow(inflow_now, "inflow_now");
    require_flow(outflow_prev, "outflow_prev");
    require_flow(outflow_cmd, "outflow_cmd");
    if (!(state.depth >= 0.0) || state.depth > params.h_max)
        throw PreconditionError("pond depth " + std::to_string(state.depth) +
                                " outside [0, h_max]");

    // depth change per unit of summed flow over one step
    const double c = params.dt / (2.0 * params.area);

    const double sustainable = state.depth / c + inflow_prev;
    if (outflow_prev > sustainable * (1.0 + 1e-12) + 1e-12)
        throw PreconditionError("previous outflow " + std::to_string(outflow_prev) +
                                " cannot be sustained by the stored volume");

    // depth reached if the gate closes fully at the end of the step
    const double closed_depth = std::max(0.0, state.depth + c * (inflow_prev + inflow_now - outflow_prev));

    double realized = std::min(outflow_cmd, 0.5 * (closed_depth / c + inflow_now));
    double depth = closed_depth - c * realized;
    double overflow = 0.0;
    if (depth > params.h_max) {
        realized = std::min(realized, params.h_max / c + inflow_now);
        depth = closed_depth - c * realized;
        overflow = params.area * (depth - params.h_max);
        depth = params.h_max;
    }
    depth = std::max(0.0, depth);
    realized = std::max(0.0, realized);

    RouteResult out;
    out.state.depth = depth;
    out.state.step = state.step + 1;
    out.state.overflow_total = state.overflow_total + overflow;
    out.state.outflow = realized;
    out.realized_outflow = realized;
    out.overflow_step = overflow;
    return out;
}

}  // namespace

void PondParams::validate() const {
    if (!positive_finite(area)) throw PreconditionError("area must be > 0");
    if (!positive_finite(h_max)) throw PreconditionError("h_max must be > 0");
    if (!positive_finite(q_max)) throw PreconditionError("q_max must be > 0");
    if (!positive_finite(dt)) throw PreconditionError("dt must be > 0");
    if (n_c < 1) throw PreconditionError("n_c must be >= 1");
    if (!positive_finite(capacity())) throw PreconditionError("capacity must be finite and > 0");
}

RouteResult route_step(const PondState& state, const PondParams& params, double inflow_prev,
                       double inflow_now, double outflow_prev, double outflow_cmd) {
    if (outflow_cmd > params.q_max)
        throw PreconditionError("commanded outflow " + std::to_string(outflow_cmd) +
                                " exceeds q_max " + std::to_string(params.q_max));
    return route(state, params, inflow_prev, inflow_now, outflow_prev, outflow_cmd);
}

RouteResult route_step_uncapped(const PondState& state, const PondParams& params,
                                double inflow_prev, double inflow_now, double outflow_prev,
                                double outflow_cmd) {
    return route(state, params, inflow_prev, inflow_now, outflow_prev, outflow_cmd);
}

double stored_volume(const PondState& state, const PondParams& params) {
    return params.area * state.depth;
}

double trapezoid_volume(double rate_prev, double rate_now, double dt) {
    return 0.5 * dt * (rate_prev + rate_now);
}

}  // namespace pond
