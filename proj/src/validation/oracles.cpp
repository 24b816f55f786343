#include <algorithm>
#include <cmath>

#include "pond/errors.hpp"
#include "pond/validation.hpp"

namespace pond::validation {

namespace {

// Solves the d x d system a x = b in place (row-major); false when singular.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, int d) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return d == 0;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a[r * d + col]) > std::abs(a[piv * d + col])) piv = r;
        if (std::abs(a[piv * d + col]) < 1e-12 * scale) return false;
        if (piv != col) {
            for (int k = 0; k < d; ++k) std::swap(a[col * d + k], a[piv * d + k]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < d; ++r) {
            const double f = a[r * d + col] / a[col * d + col];
            if (f == 0.0) continue;
            for (int k = col; k < d; ++k) a[r * d + k] -= f * a[col * d + k];
            b[r] -= f * b[col];
        }
    }
    for (int r = d - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < d; ++k) s -= a[r * d + k] * b[k];
        b[r] = s / a[r * d + r];
    }
    return true;
}

struct Option {
    std::vector<double> row;  // over free variables
    double rhs;
};

}  // namespace

PondOracleResult enumerate_pond_lp(const PondParams& params, double initial_depth, const std::vector<double>& forecast,
                                   std::optional<double> initial_outflow, bool cap_outflow) {
    const int n = static_cast<int>(forecast.size()) - 1;
    if (n < 1) throw PreconditionError("oracle needs at least one step");
    const double c = params.dt / (2.0 * params.area);
    const int first_free = initial_outflow ? 1 : 0;
    const int d = n + 1 - first_free;
    const double q0 = initial_outflow.value_or(0.0);

    // H(t) = g[t] - c * sum_j a[t][j] Q(j)
    std::vector<double> g(n + 1, initial_depth);
    std::vector<std::vector<double>> a(n + 1, std::vector<double>(n + 1, 0.0));
    for (int t = 1; t <= n; ++t) {
        g[t] = g[t - 1] + c * (forecast[t - 1] + forecast[t]);
        for (int j = 0; j <= t; ++j) a[t][j] = (j == 0 || j == t) ? 1.0 : 2.0;
    }

    // each slot holds the alternative active constraints of one bound pair
    std::vector<std::vector<Option>> slots;
    for (int j = first_free; j <= n; ++j) {
        std::vector<Option> opts;
        std::vector<double> e(d, 0.0);
        e[j - first_free] = 1.0;
        opts.push_back({e, 0.0});
        if (cap_outflow) opts.push_back({e, params.q_max});
        slots.push_back(std::move(opts));
    }
    for (int t = 1; t <= n; ++t) {
        std::vector<double> row(d, 0.0);
        for (int j = first_free; j <= t; ++j) row[j - first_free] = a[t][j];
        // sum over free j of a Q = (g - c a0 Q0 - H) / c, at H = 0 and H = h_max
        const double base = (g[t] - c * a[t][0] * q0) / c;
        slots.push_back({{row, base}, {row, base - params.h_max / c}});
    }
    const int n_slots = static_cast<int>(slots.size());

    std::vector<double> weights(n + 1, params.dt);
    weights.front() = weights.back() = 0.5 * params.dt;

    struct Vertex {
        double total, release;
        std::vector<double> q;
    };
    std::vector<Vertex> feasible;
    std::vector<const Option*> chosen;
    std::vector<double> mat(static_cast<std::size_t>(d) * d), rhs(d), q(n + 1);
    const double tol_h = 1e-9;
    const double tol_q = 1e-9 * std::max(1.0, params.q_max);

    auto evaluate = [&] {
        for (int r = 0; r < d; ++r) {
            std::copy(chosen[r]->row.begin(), chosen[r]->row.end(), mat.begin() + static_cast<long>(r) * d);
            rhs[r] = chosen[r]->rhs;
        }
        if (!solve_dense(mat, rhs, d)) return;
        if (initial_outflow) q[0] = q0;
        for (int j = first_free; j <= n; ++j) {
            const double v = rhs[j - first_free];
            if (v < -tol_q || (cap_outflow && v > params.q_max + tol_q)) return;
            q[j] = v;
        }
        for (int t = 1; t <= n; ++t) {
            double h = g[t];
            for (int j = 0; j <= t; ++j) h -= c * a[t][j] * q[j];
            if (h < -tol_h || h > params.h_max + tol_h) return;
        }
        Vertex v{0.0, 0.0, q};
        for (int j = 0; j <= n; ++j) {
            v.total += q[j];
            v.release += weights[j] * q[j];
        }
        feasible.push_back(std::move(v));
    };

    // depth-first choice of d slots, one active option each
    auto dfs = [&](auto&& self, int slot) -> void {
        const int have = static_cast<int>(chosen.size());
        if (have == d) {
            evaluate();
            return;
        }
        if (n_slots - slot < d - have) return;
        for (const Option& o : slots[slot]) {
            chosen.push_back(&o);
            self(self, slot + 1);
            chosen.pop_back();
        }
        self(self, slot + 1);
    };
    if (d == 0) evaluate();
    else dfs(dfs, 0);

    PondOracleResult out;
    out.vertices = feasible.size();
    if (feasible.empty()) return out;
    double best_total = kInf;
    for (const auto& v : feasible) best_total = std::min(best_total, v.total);
    const double tie = 1e-9 * std::max(1.0, std::abs(best_total));
    const Vertex* best = nullptr;
    for (const auto& v : feasible)
        if (v.total <= best_total + tie && (!best || v.release < best->release)) best = &v;
    out.feasible = true;
    out.outflows = best->q;
    out.total_outflow = best->total;
    out.release_volume = best->release;
    out.peak_outflow = *std::max_element(best->q.begin(), best->q.end());
    return out;
}

LpOracleResult enumerate_lp(const LpProblem& lp) {
    const int n = static_cast<int>(lp.num_vars());
    for (int j = 0; j < n; ++j)
        if (!std::isfinite(lp.lower[j]) || !std::isfinite(lp.upper[j]))
            throw PreconditionError("enumeration oracle needs finite bounds");

    // every vertex is fixed by n independent active constraints: a bound per
    // variable or a row at equality
    std::vector<std::vector<Option>> slots;
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        slots.push_back({{e, lp.lower[j]}, {e, lp.upper[j]}});
    }
    std::vector<std::vector<double>> dense;
    for (const auto& row : lp.rows) {
        std::vector<double> a(n, 0.0);
        for (const auto& [j, v] : row.coeffs) a[j] += v;
        dense.push_back(a);
        slots.push_back({{a, row.rhs}});
    }
    const int n_slots = static_cast<int>(slots.size());

    LpOracleResult best;
    std::vector<const Option*> chosen;
    std::vector<double> mat(static_cast<std::size_t>(n) * n), x(n);
    const double tol = 1e-9;

    auto evaluate = [&] {
        for (int r = 0; r < n; ++r) {
            std::copy(chosen[r]->row.begin(), chosen[r]->row.end(), mat.begin() + static_cast<long>(r) * n);
            x[r] = chosen[r]->rhs;
        }
        if (!solve_dense(mat, x, n)) return;
        for (int j = 0; j < n; ++j)
            if (x[j] < lp.lower[j] - tol || x[j] > lp.upper[j] + tol) return;
        for (std::size_t i = 0; i < lp.rows.size(); ++i) {
            double ax = 0.0, scale = std::abs(lp.rows[i].rhs);
            for (int j = 0; j < n; ++j) {
                ax += dense[i][j] * x[j];
                scale = std::max(scale, std::abs(dense[i][j] * x[j]));
            }
            const double slack = tol * std::max(1.0, scale);
            const Relation rel = lp.rows[i].relation;
            if (rel != Relation::GreaterEqual && ax > lp.rows[i].rhs + slack) return;
            if (rel != Relation::LessEqual && ax < lp.rows[i].rhs - slack) return;
        }
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
        if (!best.feasible || obj < best.objective) {
            best.feasible = true;
            best.objective = obj;
            best.x = x;
        }
    };

    auto dfs = [&](auto&& self, int slot) -> void {
        const int have = static_cast<int>(chosen.size());
        if (have == n) {
            evaluate();
            return;
        }
        if (n_slots - slot < n - have) return;
        for (const Option& o : slots[slot]) {
            chosen.push_back(&o);
            self(self, slot + 1);
            chosen.pop_back();
        }
        self(self, slot + 1);
    };
    dfs(dfs, 0);
    return best;
}

}  // namespace pond::validation
