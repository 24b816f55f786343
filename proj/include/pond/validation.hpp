#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pond/config.hpp"
#include "pond/controller.hpp"
#include "pond/hydraulics.hpp"
#include "pond/lp.hpp"
#include "pond/optimizer.hpp"

// Independent checks shared by the tests, the acceptance run and `pondctl validate`.
namespace pond::validation {

// ---- oracles -------------------------------------------------------------

/// Lexicographic optimum (total outflow, then release volume) of the pond LP
/// found by enumerating every vertex in Q-space. Depths are eliminated via
///   H(t) = H0 + c sum_{s<=t} (I(s-1) + I(s)) - c (Q0 + 2 Q1 + ... + 2 Q(t-1) + Q(t)).
/// Exponential in n; meant for n <= 7.
struct PondOracleResult {
    bool feasible = false;
    std::vector<double> outflows;
    double total_outflow = 0.0;
    double release_volume = 0.0;
    double peak_outflow = 0.0;
    std::size_t vertices = 0;  ///< feasible vertices visited
};

/// `cap_outflow = false` drops the Q <= q_max bounds, which tells whether q_max binds.
PondOracleResult enumerate_pond_lp(const PondParams& params, double initial_depth, const std::vector<double>& forecast,
                                   std::optional<double> initial_outflow = std::nullopt, bool cap_outflow = true);

/// Optimum of a bounded LP (every variable has finite bounds) by enumerating
/// vertices: n linearly independent active bounds or rows, checked for feasibility.
struct LpOracleResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};
LpOracleResult enumerate_lp(const LpProblem& lp);

// ---- random instances ----------------------------------------------------

struct PondInstance {
    PondParams params;
    double initial_depth = 0.0;
    std::vector<double> forecast;
    std::optional<double> initial_outflow;
};

/// n_c uniform in [n_min, n_max]; storms scaled around the pond capacity so
/// feasible, infeasible and q_max-binding cases all occur.
PondInstance random_pond_instance(std::mt19937_64& rng, int n_min, int n_max, bool pin_initial_outflow);

/// Dense random LP with n_vars boxed variables and mixed-relation rows.
LpProblem random_small_lp(std::mt19937_64& rng, int n_vars, int n_rows);

// ---- invariant checks ----------------------------------------------------

/// Largest mass-balance residual (m) of a schedule against its forecast.
double schedule_residual(const OutflowSchedule& s, const PondParams& params, const std::vector<double>& forecast);

/// Human-readable violations of the per-row plant invariants and mass
/// conservation (relative tolerance `mass_tol` on total inflow volume).
std::vector<std::string> check_trace(const SimulationTrace& trace, const PondParams& params, double mass_tol = 1e-6);

// ---- bundled scenarios ---------------------------------------------------

/// A = 51245.833 m2, h_max = 1.2 m, q_max = 2.54 m3/s, dt = 300 s, n_c = 720.
PondParams reference_params();
ControllerConfig reference_config();

/// Piecewise-linear hydrograph through (step, m3/s) knots over `steps + 1` samples.
std::vector<double> hydrograph(std::size_t steps, const std::vector<std::pair<double, double>>& knots);

/// Triangular storm peaking at 13.2 m3/s, 83160 m3: above capacity, drainable at q_max.
Scenario storm_over_capacity();
/// One storm well below capacity, then a small one about 48 h after it ends.
Scenario retention_storm();
/// Two large storms with a gap shorter than t_e + 20 h.
Scenario two_storms();
Scenario all_dry(std::size_t steps = 288);
/// Rainfall routed through the linear-reservoir catchment.
Scenario rain_driven();

std::vector<Scenario> bundled_scenarios();

// ---- suite ---------------------------------------------------------------

struct SuiteOptions {
    int lp_instances = 200;
    std::uint64_t seed = 20240611;
};

/// Oracle comparison plus invariants on every bundled scenario; prints one
/// line per check. Returns true when all pass.
bool run_validation_suite(std::ostream& out, const SuiteOptions& options = {});

}  // namespace pond::validation
