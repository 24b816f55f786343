#include "pond/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pond/errors.hpp"
#include "pond/optimizer.hpp"
#include "pond/scenario_io.hpp"

namespace pond {

namespace {

struct NamedAction {
    Action action;
    const char* name;
};

constexpr NamedAction kActions[] = {
    {Action::Init, "init"},
    {Action::Plan, "plan"},
    {Action::PlanFallback, "plan_fallback"},
    {Action::EmptyAtMax, "empty_at_max"},
    {Action::Proportional, "proportional"},
    {Action::HoldClosed, "hold_closed"},
    {Action::Passthrough, "passthrough"},
    {Action::Orifice, "orifice"},
};

Action action_for(RuleKind kind) {
    switch (kind) {
        case RuleKind::EmptyAtMax: return Action::EmptyAtMax;
        case RuleKind::ProportionalRelease: return Action::Proportional;
        case RuleKind::HoldClosed: return Action::HoldClosed;
    }
    return Action::HoldClosed;
}

}  // namespace

const char* to_string(Mode mode) {
    switch (mode) {
        case Mode::Wet: return "wet";
        case Mode::Dry: return "dry";
        case Mode::Static: return "static";
    }
    return "unknown";
}

const char* to_string(Action action) {
    for (const auto& a : kActions)
        if (a.action == action) return a.name;
    return "unknown";
}

Mode mode_from_string(std::string_view s) {
    if (s == "wet") return Mode::Wet;
    if (s == "dry") return Mode::Dry;
    if (s == "static") return Mode::Static;
    throw ParseError("unknown mode '" + std::string(s) + "'");
}

Action action_from_string(std::string_view s) {
    for (const auto& a : kActions)
        if (s == a.name) return a.action;
    throw ParseError("unknown rule '" + std::string(s) + "'");
}

Mode detect_mode(double current_inflow, const ControllerConfig& config) {
    if (!(current_inflow >= 0.0)) throw PreconditionError("inflow must be >= 0");
    return current_inflow > config.wet_threshold ? Mode::Wet : Mode::Dry;
}

ControlDecision controller_step(const PondState& state, const PondParams& params, const ControllerConfig& config,
                                const ForecastWindow& forecast) {
    if (config.horizon_steps(params.dt) != params.n_c)
        throw ConfigError("n_c does not match anticipation_horizon / dt");
    if (forecast.inflow.size() != static_cast<std::size_t>(params.n_c) + 1)
        throw ConfigError("forecast window length does not match n_c + 1");

    ControlDecision d;
    d.mode = detect_mode(forecast.inflow[0], config);

    if (d.mode == Mode::Dry) {
        d.emptying_time = emptying_time(state, params, config.te_mode);
        const DryContext ctx{forecast.t_next_rain, forecast.t_f, forecast.now, d.emptying_time, config.settle_time};
        d.rule = select_rule(ctx, params);
        d.action = action_for(d.rule->kind);
        d.command = d.rule->outflow;
        return d;
    }

    try {
        const OutflowSchedule plan = plan_outflows(params, state.depth, forecast.inflow, state.outflow);
        d.action = Action::Plan;
        d.command = plan.outflows[1];
        d.plan_steps = plan.solved_steps;
        d.plan_iterations = plan.iterations;
        d.planned_peak = plan.peak_outflow;
    } catch (const InfeasiblePlanError& e) {
        d.action = Action::PlanFallback;
        d.command = params.q_max;
        d.capacity_deficit = e.deficit();
    }
    d.command = std::clamp(d.command, 0.0, params.q_max);

    // The plan keeps H(1) <= h_max up to solver tolerance; make sure the plant
    // agrees so rounding never turns into a spill.
    const double c = params.dt / (2.0 * params.area);
    const double closed = state.depth + c * (forecast.inflow[0] + forecast.inflow[1] - state.outflow);
    if (closed - c * d.command > params.h_max && d.command < params.q_max) {
        double need = (closed - params.h_max) / c;
        while (need < params.q_max && closed - c * need > params.h_max)
            need = std::nextafter(need, std::numeric_limits<double>::infinity());
        d.command = std::min(need, params.q_max);
        d.guard_raised = true;
    }
    return d;
}

double SimulationTrace::overflow_total() const {
    double total = 0.0;
    for (const auto& r : rows) total += r.overflow_step;
    return total;
}

SimulationRunner::SimulationRunner(const Scenario& scenario, const PondParams& params, const ControllerConfig& config)
    : scenario_(&scenario), params_(params), config_(config) {
    scenario.validate();
    params.validate();
    config.validate(params.dt);
    if (scenario.dt != params.dt) throw ConfigError("scenario dt differs from pond dt");
    if (config.horizon_steps(params.dt) != params.n_c)
        throw ConfigError("n_c does not match anticipation_horizon / dt");
    if (!(config.initial_depth >= 0.0 && config.initial_depth <= params.h_max))
        throw ConfigError("initial depth outside [0, h_max]");

    state_.depth = config.initial_depth;
    trace_.name = scenario.name;
    trace_.dt = scenario.dt;
    trace_.rows.reserve(scenario.inflow.size());
    TraceRow row;
    row.time = scenario.time_at(0);
    row.inflow = scenario.inflow[0];
    row.depth = state_.depth;
    row.mode = detect_mode(row.inflow, config);
    row.action = Action::Init;
    trace_.rows.push_back(row);
}

const TraceRow& SimulationRunner::step() {
    if (done()) throw PreconditionError("simulation already finished");
    const ForecastWindow window = forecast_window(*scenario_, step_, config_);
    last_ = controller_step(state_, params_, config_, window);

    const double i_prev = scenario_->inflow[step_];
    const double i_now = scenario_->inflow[step_ + 1];
    const RouteResult r = route_step(state_, params_, i_prev, i_now, state_.outflow, last_.command);
    state_ = r.state;
    ++step_;

    TraceRow row;
    row.time = scenario_->time_at(step_);
    row.inflow = i_now;
    row.commanded = last_.command;
    row.realized = r.realized_outflow;
    row.depth = state_.depth;
    row.overflow_step = r.overflow_step;
    row.mode = last_.mode;
    row.action = last_.action;
    trace_.rows.push_back(row);
    return trace_.rows.back();
}

void SimulationRunner::run_to_end() {
    while (!done()) step();
}

SimulationTrace run_simulation(const Scenario& scenario, const PondParams& params, const ControllerConfig& config) {
    SimulationRunner runner(scenario, params, config);
    runner.run_to_end();
    return runner.take_trace();
}

}  // namespace pond
