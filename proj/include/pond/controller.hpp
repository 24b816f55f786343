#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pond/config.hpp"
#include "pond/hydraulics.hpp"
#include "pond/rules.hpp"

namespace pond {

enum class Mode { Wet, Dry, Static };

/// What produced a trace row's command.
enum class Action {
    Init,          ///< row 0, nothing commanded yet
    Plan,          ///< first set point of the wet-period LP
    PlanFallback,  ///< LP infeasible, gate fully open
    EmptyAtMax,
    Proportional,
    HoldClosed,
    Passthrough,  ///< static baseline, no storage
    Orifice,      ///< static baseline, free orifice
};

const char* to_string(Mode mode);
const char* to_string(Action action);
Mode mode_from_string(std::string_view s);      ///< throws ParseError
Action action_from_string(std::string_view s);  ///< throws ParseError

/// Wet iff current inflow > wet_threshold (strict).
Mode detect_mode(double current_inflow, const ControllerConfig& config);

struct ControlDecision {
    double command = 0.0;  ///< set point for the coming step (m3/s), in [0, q_max]
    Mode mode = Mode::Dry;
    Action action = Action::HoldClosed;

    // diagnostics
    std::optional<RuleDecision> rule;
    double emptying_time = 0.0;  ///< s, dry mode only
    int plan_steps = 0;          ///< LP steps after trimming
    int plan_iterations = 0;
    double planned_peak = 0.0;     ///< m3/s
    double capacity_deficit = 0.0; ///< m3, set when the plan fell back
    bool guard_raised = false;     ///< command lifted to keep the next depth at h_max
};

/// One control decision at the instant described by `state` and `forecast`.
/// Wet: re-plan from the current depth with Q(0) pinned to the outflow already
/// leaving the pond and command Q(1), the rate reached at the end of the step.
/// Dry: pick a rule from the emptying time and the next forecast rain.
ControlDecision controller_step(const PondState& state, const PondParams& params, const ControllerConfig& config,
                                const ForecastWindow& forecast);

struct TraceRow {
    std::int64_t time = 0;      ///< s
    double inflow = 0.0;        ///< m3/s at this instant
    double commanded = 0.0;     ///< set point that drove the step ending here
    double realized = 0.0;      ///< m3/s at this instant
    double depth = 0.0;         ///< m
    double overflow_step = 0.0; ///< m3 spilled during the step ending here
    Mode mode = Mode::Dry;
    Action action = Action::Init;
};

/// Row 0 is the initial state; row k > 0 is the outcome of the step k-1 -> k
/// together with the decision taken at k-1.
struct SimulationTrace {
    std::string name;
    double dt = 0.0;
    std::vector<TraceRow> rows;

    double overflow_total() const;
};

/// Step-wise driver: observe, decide, route, record.
class SimulationRunner {
public:
    SimulationRunner(const Scenario& scenario, const PondParams& params, const ControllerConfig& config);

    bool done() const { return step_ + 1 >= scenario_->inflow.size(); }
    /// Advances one step and returns the row it appended.
    const TraceRow& step();
    void run_to_end();

    const PondState& state() const { return state_; }
    const SimulationTrace& trace() const { return trace_; }
    const ControlDecision& last_decision() const { return last_; }
    SimulationTrace take_trace() { return std::move(trace_); }

private:
    const Scenario* scenario_;
    PondParams params_;
    ControllerConfig config_;
    PondState state_;
    std::size_t step_ = 0;
    SimulationTrace trace_;
    ControlDecision last_;
};

SimulationTrace run_simulation(const Scenario& scenario, const PondParams& params, const ControllerConfig& config);

}  // namespace pond
