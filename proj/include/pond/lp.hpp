#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace pond {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LpRow {
    std::vector<std::pair<int, double>> coeffs;  ///< sparse (column, coefficient)
    Relation relation = Relation::Equal;
    double rhs = 0.0;
    std::string name;
};

/// min c'x  s.t.  rows,  lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be kInf.
struct LpProblem {
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::string> names;
    std::vector<LpRow> rows;

    std::size_t num_vars() const { return objective.size(); }

    /// Appends a variable and returns its column index.
    int add_variable(double cost, double lo, double hi, std::string name = {});
    void add_row(LpRow row) { rows.push_back(std::move(row)); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
    /// Reduced cost per structural column at the returned basis (Optimal only).
    std::vector<double> reduced_costs;
    int iterations = 0;
    /// Largest scaled row residual of the returned point (Optimal only).
    double max_residual = 0.0;
};

struct SimplexOptions {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-9;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    int degenerate_switch = 30;
    /// 0 means 50 * (rows + columns).
    int max_iterations = 0;
};

/// Bounded-variable two-phase primal simplex on a dense tableau.
///
/// Pricing is Dantzig's largest reduced cost; after `degenerate_switch`
/// consecutive degenerate pivots it falls back to Bland's smallest-index
/// rule until a pivot makes progress, which rules out cycling. Rows are
/// equilibrated by their largest coefficient before solving. An Optimal
/// answer is re-derived from a fresh factorization of the final basis and
/// checked (row residuals, bounds, reduced-cost signs); a check failure
/// raises NumericalError instead of returning a wrong point.
LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options = {});

/// Writes the problem in CPLEX LP text format, one constraint per line, so it
/// can be cross-checked with external solvers.
void write_lp_text(const LpProblem& problem, std::ostream& out);

const char* to_string(LpStatus status);

}  // namespace pond
