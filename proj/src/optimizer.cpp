#include "pond/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pond/errors.hpp"

namespace pond {

namespace {

void check_inputs(const PondParams& params, double initial_depth, std::span<const double> forecast,
                  std::optional<double> initial_outflow) {
    params.validate();
    if (forecast.size() != static_cast<std::size_t>(params.n_c) + 1)
        throw PreconditionError("forecast has " + std::to_string(forecast.size()) + " samples, expected n_c+1 = " +
                                std::to_string(params.n_c + 1));
    if (!(initial_depth >= 0.0 && initial_depth <= params.h_max))
        throw PreconditionError("initial depth " + std::to_string(initial_depth) + " outside [0, h_max]");
    for (double v : forecast)
        if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("forecast inflows must be finite and >= 0");
    if (initial_outflow && !(*initial_outflow >= 0.0 && *initial_outflow <= params.q_max))
        throw PreconditionError("initial outflow outside [0, q_max]");
}

LpProblem build_rows(const PondParams& params, double initial_depth, std::span<const double> forecast,
                     std::optional<double> initial_outflow) {
    const int n = static_cast<int>(forecast.size()) - 1;
    const PondLpLayout lay{n};
    const double c = params.dt / (2.0 * params.area);

    LpProblem lp;
    for (int t = 0; t <= n; ++t) lp.add_variable(1.0, 0.0, params.q_max, "Q" + std::to_string(t));
    for (int t = 1; t <= n; ++t) lp.add_variable(0.0, 0.0, params.h_max, "H" + std::to_string(t));
    if (initial_outflow) {
        lp.lower[lay.q(0)] = *initial_outflow;
        lp.upper[lay.q(0)] = *initial_outflow;
    }
    for (int t = 1; t <= n; ++t) {
        LpRow row;
        row.name = "mass" + std::to_string(t);
        row.relation = Relation::Equal;
        row.coeffs = {{lay.q(t - 1), c}, {lay.q(t), c}, {lay.h(t), 1.0}};
        row.rhs = c * (forecast[t - 1] + forecast[t]);
        if (t == 1) row.rhs += initial_depth;
        else row.coeffs.emplace_back(lay.h(t - 1), -1.0);
        lp.add_row(std::move(row));
    }
    return lp;
}

std::vector<double> release_weights(int n, double dt) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1, dt);
    w.front() = 0.5 * dt;
    w.back() = 0.5 * dt;
    return w;
}

LpSolution solve_stage(const LpProblem& lp, const char* stage) {
    LpSolution s = solve_lp(lp);
    if (s.status == LpStatus::Unbounded)
        throw NumericalError(std::string("pond LP unbounded in stage ") + stage);
    return s;
}


// Lexicographic plan over Q(0..T), H(1..T) with the full-horizon release
// weights. This is a relaxation of the n-step problem; when the plan extended
// with Q = 0 after T keeps every depth <= h_max it is optimal for all n steps.
std::optional<OutflowSchedule> plan_truncated(const PondParams& params, double initial_depth,
                                              std::span<const double> forecast, std::optional<double> initial_outflow,
                                              int trim) {
    const int n = params.n_c;
    const PondLpLayout lay{trim};
    std::vector<double> w = release_weights(n, params.dt);
    w.resize(static_cast<std::size_t>(trim) + 1);

    // stage 1: total outflow
    LpProblem lp = build_rows(params, initial_depth, forecast.first(static_cast<std::size_t>(trim) + 1), initial_outflow);
    const LpSolution s1 = solve_stage(lp, "total");
    if (s1.status == LpStatus::Infeasible)
        throw InfeasiblePlanError(capacity_deficit(params, initial_depth, forecast, initial_outflow));
    double total = 0.0;
    for (int t = 0; t <= trim; ++t) total += s1.x[lay.q(t)];

    // stage 2: release volume among minimal-total plans
    LpRow pin_total{{}, Relation::Equal, total, "pin_total"};
    for (int t = 0; t <= trim; ++t) pin_total.coeffs.emplace_back(lay.q(t), 1.0);
    lp.add_row(std::move(pin_total));
    std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
    for (int t = 0; t <= trim; ++t) lp.objective[lay.q(t)] = w[t];
    const LpSolution s2 = solve_stage(lp, "release");
    if (s2.status != LpStatus::Optimal) throw NumericalError("pond LP lost feasibility after pinning total outflow");
    double release = 0.0;
    double untied_peak = 0.0;
    for (int t = 0; t <= trim; ++t) {
        release += w[t] * s2.x[lay.q(t)];
        untied_peak = std::max(untied_peak, s2.x[lay.q(t)]);
    }

    // stage 3: peak outflow among those
    LpRow pin_release{{}, Relation::Equal, release, "pin_release"};
    for (int t = 0; t <= trim; ++t) pin_release.coeffs.emplace_back(lay.q(t), w[t]);
    lp.add_row(std::move(pin_release));
    std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
    const int peak = lp.add_variable(1.0, 0.0, params.q_max, "peak");
    for (int t = 0; t <= trim; ++t) {
        if (lp.lower[lay.q(t)] == lp.upper[lay.q(t)]) continue;
        lp.add_row(LpRow{{{lay.q(t), 1.0}, {peak, -1.0}}, Relation::LessEqual, 0.0, "peak" + std::to_string(t)});
    }
    const LpSolution s3 = solve_stage(lp, "peak");
    if (s3.status != LpStatus::Optimal) throw NumericalError("pond LP lost feasibility after pinning release volume");

    OutflowSchedule out;
    out.outflows.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.depths.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.depths[0] = initial_depth;
    for (int t = 0; t <= trim; ++t) out.outflows[t] = std::clamp(s3.x[lay.q(t)], 0.0, params.q_max);
    if (initial_outflow) out.outflows[0] = *initial_outflow;
    for (int t = 1; t <= trim; ++t) out.depths[t] = std::clamp(s3.x[lay.h(t)], 0.0, params.h_max);

    const double c = params.dt / (2.0 * params.area);
    for (int t = trim + 1; t <= n; ++t) {
        const double h = out.depths[t - 1] + c * (forecast[t - 1] + forecast[t] - out.outflows[t - 1]);
        if (h > params.h_max + 1e-9) return std::nullopt;
        out.depths[t] = std::min(h, params.h_max);
    }

    out.total_release_volume = series_volume(out.outflows, params.dt);
    out.peak_outflow = *std::max_element(out.outflows.begin(), out.outflows.end());
    for (double q : out.outflows) out.total_outflow += q;
    out.untied_peak = untied_peak;
    out.solved_steps = trim;
    out.iterations = s1.iterations + s2.iterations + s3.iterations;
    return out;
}

}  // namespace

double series_volume(std::span<const double> rates, double dt) {
    double v = 0.0;
    for (std::size_t t = 1; t < rates.size(); ++t) v += trapezoid_volume(rates[t - 1], rates[t], dt);
    return v;
}

LpProblem build_lp(const PondParams& params, double initial_depth, std::span<const double> inflow_forecast,
                   std::optional<double> initial_outflow) {
    check_inputs(params, initial_depth, inflow_forecast, initial_outflow);
    return build_rows(params, initial_depth, inflow_forecast, initial_outflow);
}

double min_release_lower_bound(const PondParams& params, double initial_depth,
                               std::span<const double> inflow_forecast) {
    double cumulative = 0.0;
    double bound = 0.0;
    for (std::size_t t = 1; t < inflow_forecast.size(); ++t) {
        cumulative += trapezoid_volume(inflow_forecast[t - 1], inflow_forecast[t], params.dt);
        bound = std::max(bound, params.area * initial_depth + cumulative - params.capacity());
    }
    return bound;
}

double capacity_deficit(const PondParams& params, double initial_depth, std::span<const double> inflow_forecast,
                        std::optional<double> initial_outflow) {
    double inflow = 0.0;
    double release = 0.0;
    double deficit = 0.0;
    for (std::size_t t = 1; t < inflow_forecast.size(); ++t) {
        inflow += trapezoid_volume(inflow_forecast[t - 1], inflow_forecast[t], params.dt);
        const double q_prev = (t == 1 && initial_outflow) ? *initial_outflow : params.q_max;
        release += trapezoid_volume(q_prev, params.q_max, params.dt);
        deficit = std::max(deficit, params.area * initial_depth + inflow - release - params.capacity());
    }
    return deficit;
}

OutflowSchedule plan_outflows(const PondParams& params, double initial_depth,
                              std::span<const double> inflow_forecast, std::optional<double> initial_outflow) {
    check_inputs(params, initial_depth, inflow_forecast, initial_outflow);
    const int n = params.n_c;

    // Start with the horizon ending just after the first run of inflow and
    // double it until the zero-release tail stays below h_max, which proves
    // the short plan optimal for the whole window.
    const double peak_in = *std::max_element(inflow_forecast.begin(), inflow_forecast.end());
    int horizon = n;
    bool started = false;
    for (int t = 0; t <= n; ++t) {
        const bool wet = inflow_forecast[t] > 1e-3 * peak_in;
        if (wet) started = true;
        if (started && !wet) {
            horizon = std::min(n, std::max(1, t + 2));
            break;
        }
    }
    if (peak_in == 0.0) horizon = std::min(n, 2);
    for (;;) {
        if (auto plan = plan_truncated(params, initial_depth, inflow_forecast, initial_outflow, horizon)) return *plan;
        if (horizon == n) throw NumericalError("full-horizon plan failed its own depth check");
        horizon = std::min(n, 2 * horizon);
    }
}

}  // namespace pond
