#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pond/hydraulics.hpp"
#include "pond/lp.hpp"

namespace pond {

/// Column layout of the pond LP: Q(0..n) first, then H(1..n).
struct PondLpLayout {
    int n = 0;
    int q(int t) const { return t; }
    int h(int t) const { return n + t; }  ///< t in 1..n
};

/// Wet-period outflow plan over one forecast horizon.
struct OutflowSchedule {
    std::vector<double> outflows;  ///< Q(0..n) (m3/s)
    std::vector<double> depths;    ///< H(0..n) (m)
    double total_release_volume = 0.0;  ///< trapezoidal sum of Q over the horizon (m3)
    double peak_outflow = 0.0;          ///< max Q(t) (m3/s)

    double total_outflow = 0.0;      ///< sum of Q(t), the primary objective (m3/s)
    double untied_peak = 0.0;        ///< peak before the peak-minimizing tie-break (m3/s)
    int solved_steps = 0;            ///< horizon length actually optimized after trimming the dry tail
    int iterations = 0;              ///< simplex iterations over all stages
};

/// Mass-balance rows plus bounds for a horizon of n = forecast.size() - 1 steps.
///
/// Each mass-balance row is divided by 2A so it reads in metres:
///   H(t) - H(t-1) + dt/(2A) (Q(t-1) + Q(t)) = dt/(2A) (I(t-1) + I(t)).
/// When `initial_outflow` is given, Q(0) is pinned to it (the rate already
/// leaving the pond at the planning instant).
LpProblem build_lp(const PondParams& params, double initial_depth, std::span<const double> inflow_forecast,
                   std::optional<double> initial_outflow = std::nullopt);

/// Lexicographic optimum of the pond LP:
///  1. minimize sum Q(t);
///  2. among those, minimize the trapezoidal release volume;
///  3. among those, minimize the peak outflow max Q(t).
/// Each stage pins the previous optimum with an equality row. Throws
/// InfeasiblePlanError when the storm cannot be stored at q_max.
OutflowSchedule plan_outflows(const PondParams& params, double initial_depth,
                              std::span<const double> inflow_forecast,
                              std::optional<double> initial_outflow = std::nullopt);

/// max over t of [A H(0) + trapezoidal inflow volume through t - A h_max], floored at 0.
double min_release_lower_bound(const PondParams& params, double initial_depth,
                               std::span<const double> inflow_forecast);

/// Lower bound on the volume that must spill even at q_max throughout (0 when
/// the capacity argument alone does not prove a spill).
double capacity_deficit(const PondParams& params, double initial_depth, std::span<const double> inflow_forecast,
                        std::optional<double> initial_outflow = std::nullopt);

/// Trapezoidal volume of a rate series sampled every dt (m3).
double series_volume(std::span<const double> rates, double dt);

}  // namespace pond
