#pragma once

#include <cstdint>

namespace pond {

/// Physical and discretization constants of a vertical-walled basin.
struct PondParams {
    double area = 0.0;   ///< surface area (m2)
    double h_max = 0.0;  ///< maximum depth (m)
    double q_max = 0.0;  ///< maximum allowable outflow (m3/s)
    double dt = 0.0;     ///< step length (s)
    int n_c = 1;         ///< control-horizon step count

    double capacity() const { return area * h_max; }

    /// Throws PreconditionError unless every field is positive and finite.
    void validate() const;
};

/// Evolving plant state at one time instant.
struct PondState {
    double depth = 0.0;           ///< H(t) (m)
    std::int64_t step = 0;        ///< time index
    double overflow_total = 0.0;  ///< cumulative spilled volume (m3)
    double outflow = 0.0;         ///< realized outflow at this instant (m3/s)
};

struct FlowSample {
    double inflow = 0.0;   ///< I(t) (m3/s)
    double outflow = 0.0;  ///< Q(t) (m3/s)
};

struct RouteResult {
    PondState state;
    double realized_outflow = 0.0;  ///< m3/s, never above the command
    double overflow_step = 0.0;     ///< m3 spilled over h_max during the step
};

/// Advances the basin by one trapezoidal level-pool step,
///
///   A (H_new - H_old) = dt [ (I_prev + I_now)/2 - (Q_prev + Q_real)/2 ].
///
/// The plant stays physical whatever it is commanded:
///  - Q_real is lowered below the command when the pond would run dry. The
///    cap keeps Q_real <= 2 A H_new / dt + I_now, i.e. the gate can always
///    close fully on the next step without draining below zero.
///  - Depth above h_max is cut off and returned as overflow volume.
///
/// Requires non-negative flows, outflow_cmd <= q_max, and a reachable state
/// (outflow_prev <= 2 A H / dt + inflow_prev).
RouteResult route_step(const PondState& state, const PondParams& params, double inflow_prev,
                       double inflow_now, double outflow_prev, double outflow_cmd);

/// Same plant without the q_max ceiling on the command; used for static
/// outlets that no controller throttles.
RouteResult route_step_uncapped(const PondState& state, const PondParams& params,
                                double inflow_prev, double inflow_now, double outflow_prev,
                                double outflow_cmd);

/// A * H (m3).
double stored_volume(const PondState& state, const PondParams& params);

/// Trapezoidal volume of a rate series over consecutive steps (m3).
double trapezoid_volume(double rate_prev, double rate_now, double dt);

}  // namespace pond
