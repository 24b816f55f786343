#include "pond/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "pond/errors.hpp"

namespace pond {

int LpProblem::add_variable(double cost, double lo, double hi, std::string name) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    if (name.empty()) name = "x" + std::to_string(objective.size() - 1);
    names.push_back(std::move(name));
    return static_cast<int>(objective.size()) - 1;
}

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

/// Dense LU with partial pivoting, column-major input of an n x n matrix.
class DenseLu {
public:
    explicit DenseLu(std::size_t n) : n_(n), a_(n * n, 0.0), perm_(n) {}

    double& at(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }

    /// Returns false when the matrix is numerically singular.
    bool factor() {
        for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
        double scale = 0.0;
        for (double v : a_) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) return n_ == 0;
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t p = k;
            double best = std::abs(at(k, k));
            for (std::size_t r = k + 1; r < n_; ++r) {
                if (std::abs(at(r, k)) > best) {
                    best = std::abs(at(r, k));
                    p = r;
                }
            }
            if (best <= 1e-13 * scale) return false;
            if (p != k) {
                for (std::size_t c = 0; c < n_; ++c) std::swap(at(k, c), at(p, c));
                std::swap(perm_[k], perm_[p]);
            }
            const double inv = 1.0 / at(k, k);
            for (std::size_t r = k + 1; r < n_; ++r) {
                const double f = at(r, k) * inv;
                if (f == 0.0) continue;
                at(r, k) = f;
                double* dst = &a_[r * n_];
                const double* src = &a_[k * n_];
                for (std::size_t c = k + 1; c < n_; ++c) dst[c] -= f * src[c];
            }
        }
        return true;
    }

    /// Solves A x = b in place.
    void solve(std::vector<double>& b) const {
        std::vector<double> y(n_);
        for (std::size_t i = 0; i < n_; ++i) y[i] = b[perm_[i]];
        for (std::size_t i = 0; i < n_; ++i) {
            const double* row = &a_[i * n_];
            double s = y[i];
            for (std::size_t k = 0; k < i; ++k) s -= row[k] * y[k];
            y[i] = s;
        }
        for (std::size_t i = n_; i-- > 0;) {
            const double* row = &a_[i * n_];
            double s = y[i];
            for (std::size_t k = i + 1; k < n_; ++k) s -= row[k] * y[k];
            y[i] = s / row[i];
        }
        b = std::move(y);
    }

    /// Solves A' x = b in place.
    void solve_transposed(std::vector<double>& b) const {
        std::vector<double> z(b);
        // U' w = b
        for (std::size_t i = 0; i < n_; ++i) {
            double s = z[i];
            for (std::size_t k = 0; k < i; ++k) s -= a_[k * n_ + i] * z[k];
            z[i] = s / a_[i * n_ + i];
        }
        // L' v = w
        for (std::size_t i = n_; i-- > 0;) {
            double s = z[i];
            for (std::size_t k = i + 1; k < n_; ++k) s -= a_[k * n_ + i] * z[k];
            z[i] = s;
        }
        for (std::size_t i = 0; i < n_; ++i) b[perm_[i]] = z[i];
    }

private:
    std::size_t n_;
    std::vector<double> a_;
    std::vector<std::size_t> perm_;
};

enum class VarState : unsigned char { Basic, AtLower, AtUpper };

/// Standard-form working copy: scaled rows, one slack per inequality row,
/// one (virtual) artificial per row. Artificial columns are never stored in
/// the tableau since they can not re-enter once they leave.
class Simplex {
public:
    Simplex(const LpProblem& p, const SimplexOptions& opt) : opt_(opt) { load(p); }

    LpSolution run() {
        LpSolution sol;
        if (trivially_infeasible_) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        initial_basis();

        // phase 1
        std::vector<double> phase1(cols_, 0.0);
        set_costs(phase1, /*artificial_cost=*/1.0);
        const LpStatus s1 = iterate();
        if (s1 != LpStatus::Optimal) throw NumericalError("simplex phase 1 did not terminate");
        for (std::size_t i = 0; i < m_; ++i) {
            if (is_artificial(basis_[i]) && beta_[i] > opt_.feasibility_tol) {
                sol.status = LpStatus::Infeasible;
                sol.iterations = iterations_;
                return sol;
            }
        }
        drive_out_artificials();

        // phase 2, with reinversion when the certificate check disagrees
        set_costs(cost_, 0.0);
        for (int attempt = 0;; ++attempt) {
            const LpStatus s2 = iterate();
            if (s2 == LpStatus::Unbounded) {
                sol.status = LpStatus::Unbounded;
                sol.iterations = iterations_;
                return sol;
            }
            if (certify(sol)) break;
            if (attempt >= 2)
                throw NumericalError("simplex could not certify an optimal basis (residual " +
                                     std::to_string(sol.max_residual) + ")");
            reinvert();
        }
        sol.status = LpStatus::Optimal;
        sol.iterations = iterations_;
        return sol;
    }

private:
    // ---- problem data (scaled) ----
    SimplexOptions opt_;
    std::size_t n_ = 0;     // structural columns
    std::size_t m_ = 0;     // rows kept
    std::size_t cols_ = 0;  // structural + slack
    std::vector<double> lo_, hi_, cost_;
    std::vector<std::vector<std::pair<std::size_t, double>>> col_entries_;  // sparse A by column
    std::vector<double> rhs_;
    std::vector<Relation> rel_;
    bool trivially_infeasible_ = false;

    // ---- working state ----
    std::vector<double> tab_;  // m_ x cols_, row-major: B^-1 A
    std::vector<double> beta_;
    std::vector<std::size_t> basis_;  // column index, >= cols_ means artificial of row (idx - cols_)
    std::vector<double> art_sign_;
    std::vector<VarState> state_;
    std::vector<double> x_;  // value of nonbasic columns
    std::vector<double> d_;  // reduced costs
    std::vector<double> active_cost_;
    double artificial_cost_ = 0.0;
    bool artificial_barred_ = false;
    int iterations_ = 0;
    int max_iterations_ = 0;

    bool is_artificial(std::size_t col) const { return col >= cols_; }
    double* row(std::size_t i) { return &tab_[i * cols_]; }

    void load(const LpProblem& p) {
        n_ = p.num_vars();
        if (p.lower.size() != n_ || p.upper.size() != n_)
            throw PreconditionError("LP bound vectors do not match the variable count");
        for (std::size_t j = 0; j < n_; ++j) {
            if (!std::isfinite(p.lower[j]))
                throw PreconditionError("LP variable " + std::to_string(j) + " needs a finite lower bound");
            if (p.upper[j] < p.lower[j])
                throw PreconditionError("LP variable " + std::to_string(j) + " has upper < lower");
        }
        lo_ = p.lower;
        hi_ = p.upper;
        cost_ = p.objective;

        std::vector<std::vector<std::pair<std::size_t, double>>> rows;
        for (const LpRow& r : p.rows) {
            std::vector<std::pair<std::size_t, double>> merged;
            for (auto [c, v] : r.coeffs) {
                if (c < 0 || static_cast<std::size_t>(c) >= n_)
                    throw PreconditionError("LP row references unknown column " + std::to_string(c));
                auto it = std::find_if(merged.begin(), merged.end(),
                                       [&](const auto& e) { return e.first == static_cast<std::size_t>(c); });
                if (it == merged.end()) merged.emplace_back(static_cast<std::size_t>(c), v);
                else it->second += v;
            }
            std::erase_if(merged, [](const auto& e) { return e.second == 0.0; });
            double scale = 0.0;
            for (const auto& e : merged) scale = std::max(scale, std::abs(e.second));
            if (scale == 0.0) {
                const bool ok = (r.relation == Relation::LessEqual && 0.0 <= r.rhs + opt_.feasibility_tol) ||
                                (r.relation == Relation::GreaterEqual && 0.0 >= r.rhs - opt_.feasibility_tol) ||
                                (r.relation == Relation::Equal && std::abs(r.rhs) <= opt_.feasibility_tol);
                if (!ok) trivially_infeasible_ = true;
                continue;
            }
            for (auto& e : merged) e.second /= scale;
            rows.push_back(std::move(merged));
            rhs_.push_back(r.rhs / scale);
            rel_.push_back(r.relation);
        }
        m_ = rows.size();

        // slack columns
        std::size_t slacks = 0;
        for (Relation r : rel_) slacks += (r != Relation::Equal);
        cols_ = n_ + slacks;
        lo_.resize(cols_, 0.0);
        hi_.resize(cols_, kInf);
        cost_.resize(cols_, 0.0);
        col_entries_.assign(cols_, {});
        std::size_t s = n_;
        for (std::size_t i = 0; i < m_; ++i) {
            for (const auto& [c, v] : rows[i]) col_entries_[c].emplace_back(i, v);
            if (rel_[i] == Relation::LessEqual) col_entries_[s++].emplace_back(i, 1.0);
            else if (rel_[i] == Relation::GreaterEqual) col_entries_[s++].emplace_back(i, -1.0);
        }
        max_iterations_ = opt_.max_iterations > 0 ? opt_.max_iterations
                                                  : 50 * static_cast<int>(m_ + cols_ + 10);
    }

    void initial_basis() {
        tab_.assign(m_ * cols_, 0.0);
        beta_.assign(m_, 0.0);
        basis_.assign(m_, 0);
        art_sign_.assign(m_, 1.0);
        state_.assign(cols_, VarState::AtLower);
        x_.assign(cols_, 0.0);
        for (std::size_t j = 0; j < cols_; ++j) x_[j] = lo_[j];

        std::vector<double> residual(rhs_);
        std::vector<long> slack_of(m_, -1);
        for (std::size_t j = 0; j < cols_; ++j) {
            for (const auto& [i, v] : col_entries_[j]) {
                tab_[i * cols_ + j] = v;
                residual[i] -= v * x_[j];
                if (j >= n_) slack_of[i] = static_cast<long>(j);
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            double sign = 1.0;
            if (slack_of[i] >= 0) {
                const auto sj = static_cast<std::size_t>(slack_of[i]);
                const double sigma = tab_[i * cols_ + sj];
                if (sigma * residual[i] >= 0.0) {
                    // slack basic
                    if (sigma < 0.0)
                        for (std::size_t c = 0; c < cols_; ++c) tab_[i * cols_ + c] = -tab_[i * cols_ + c];
                    basis_[i] = sj;
                    state_[sj] = VarState::Basic;
                    beta_[i] = sigma * residual[i];
                    continue;
                }
            }
            sign = residual[i] >= 0.0 ? 1.0 : -1.0;
            if (sign < 0.0)
                for (std::size_t c = 0; c < cols_; ++c) tab_[i * cols_ + c] = -tab_[i * cols_ + c];
            art_sign_[i] = sign;
            basis_[i] = cols_ + i;
            beta_[i] = std::abs(residual[i]);
        }
        artificial_barred_ = false;
    }

    double basic_lower(std::size_t col) const { return is_artificial(col) ? 0.0 : lo_[col]; }
    double basic_upper(std::size_t col) const {
        if (is_artificial(col)) return artificial_barred_ ? 0.0 : kInf;
        return hi_[col];
    }
    double basic_cost(std::size_t col) const { return is_artificial(col) ? artificial_cost_ : active_cost_[col]; }

    void set_costs(const std::vector<double>& costs, double artificial_cost) {
        active_cost_ = costs;
        artificial_cost_ = artificial_cost;
        d_ = active_cost_;
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = basic_cost(basis_[i]);
            if (cb == 0.0) continue;
            const double* r = row(i);
            for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cb * r[j];
        }
        for (std::size_t i = 0; i < m_; ++i)
            if (!is_artificial(basis_[i])) d_[basis_[i]] = 0.0;
    }

    void pivot(std::size_t r, std::size_t j) {
        double* pr = row(r);
        const double inv = 1.0 / pr[j];
        for (std::size_t c = 0; c < cols_; ++c) pr[c] *= inv;
        pr[j] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* pi = row(i);
            const double f = pi[j];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < cols_; ++c) pi[c] -= f * pr[c];
            pi[j] = 0.0;
        }
        const double fd = d_[j];
        if (fd != 0.0) {
            for (std::size_t c = 0; c < cols_; ++c) d_[c] -= fd * pr[c];
            d_[j] = 0.0;
        }
    }

    LpStatus iterate() {
        int degenerate_run = 0;
        bool bland = false;
        for (;;) {
            if (++iterations_ > max_iterations_) throw NumericalError("simplex iteration limit reached");

            // pricing
            std::size_t enter = cols_;
            double best = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (state_[j] == VarState::Basic || lo_[j] == hi_[j]) continue;
                const double dj = d_[j];
                const bool ok = (state_[j] == VarState::AtLower && dj < -opt_.optimality_tol) ||
                                (state_[j] == VarState::AtUpper && dj > opt_.optimality_tol);
                if (!ok) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                if (std::abs(dj) > best) {
                    best = std::abs(dj);
                    enter = j;
                }
            }
            if (enter == cols_) {
                --iterations_;
                return LpStatus::Optimal;
            }
            const double dir = state_[enter] == VarState::AtLower ? 1.0 : -1.0;

            // ratio test (Harris two-pass outside Bland mode)
            const double tol = opt_.feasibility_tol;
            double theta_relaxed = kInf;
            if (!bland) {
                for (std::size_t i = 0; i < m_; ++i) {
                    const double a = dir * tab_[i * cols_ + enter];
                    const std::size_t b = basis_[i];
                    if (a > opt_.pivot_tol) {
                        theta_relaxed = std::min(theta_relaxed, (beta_[i] - basic_lower(b) + tol) / a);
                    } else if (a < -opt_.pivot_tol) {
                        const double ub = basic_upper(b);
                        if (ub < kInf) theta_relaxed = std::min(theta_relaxed, (ub + tol - beta_[i]) / -a);
                    }
                }
            }
            theta_relaxed = std::max(theta_relaxed, 0.0);
            std::size_t leave_row = m_;
            double theta = kInf;
            bool leave_to_upper = false;
            double best_alpha = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = dir * tab_[i * cols_ + enter];
                const std::size_t b = basis_[i];
                double lim;
                bool to_upper;
                if (a > opt_.pivot_tol) {
                    lim = (beta_[i] - basic_lower(b)) / a;
                    to_upper = false;
                } else if (a < -opt_.pivot_tol) {
                    const double ub = basic_upper(b);
                    if (ub == kInf) continue;
                    lim = (ub - beta_[i]) / -a;
                    to_upper = true;
                } else {
                    continue;
                }
                lim = std::max(lim, 0.0);
                if (bland) {
                    const bool better = lim < theta - 1e-15 ||
                                        (lim <= theta + 1e-15 && leave_row < m_ && b < basis_[leave_row]);
                    if (leave_row == m_ || better) {
                        leave_row = i;
                        theta = lim;
                        leave_to_upper = to_upper;
                    }
                } else if (lim <= theta_relaxed && std::abs(a) > best_alpha) {
                    best_alpha = std::abs(a);
                    leave_row = i;
                    theta = lim;
                    leave_to_upper = to_upper;
                }
            }
            const double flip = hi_[enter] - lo_[enter];
            if (leave_row == m_ && flip == kInf) return LpStatus::Unbounded;

            const bool do_flip = flip <= theta;
            const double step = do_flip ? flip : theta;

            if (step > 1e-12) {
                degenerate_run = 0;
                bland = false;
            } else if (++degenerate_run >= opt_.degenerate_switch) {
                bland = true;
            }

            if (step != 0.0) {
                for (std::size_t i = 0; i < m_; ++i) {
                    const double a = tab_[i * cols_ + enter];
                    if (a != 0.0) beta_[i] -= dir * step * a;
                }
            }
            if (do_flip) {
                state_[enter] = state_[enter] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
                x_[enter] = state_[enter] == VarState::AtLower ? lo_[enter] : hi_[enter];
                continue;
            }

            const std::size_t leaving = basis_[leave_row];
            const double entering_value = x_[enter] + dir * step;
            pivot(leave_row, enter);
            basis_[leave_row] = enter;
            state_[enter] = VarState::Basic;
            beta_[leave_row] = entering_value;
            if (!is_artificial(leaving)) {
                state_[leaving] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
                x_[leaving] = leave_to_upper ? hi_[leaving] : lo_[leaving];
            }
        }
    }

    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (!is_artificial(basis_[r])) continue;
            const double* pr = row(r);
            std::size_t best = cols_;
            double mag = opt_.pivot_tol * 100.0;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (state_[j] == VarState::Basic) continue;
                if (std::abs(pr[j]) > mag) {
                    mag = std::abs(pr[j]);
                    best = j;
                }
            }
            if (best == cols_) continue;  // redundant row; artificial stays basic at zero
            const double value = x_[best];
            pivot(r, best);
            basis_[r] = best;
            state_[best] = VarState::Basic;
            beta_[r] = value;
        }
        artificial_barred_ = true;
    }

    /// Rebuilds tableau, basic values and reduced costs from the original
    /// columns and the current basis.
    void reinvert() {
        DenseLu lu(m_);
        for (std::size_t i = 0; i < m_; ++i) fill_basis_column(lu, i);
        if (!lu.factor()) throw NumericalError("simplex basis became singular");
        // tableau columns
        std::vector<double> col(m_);
        for (std::size_t j = 0; j < cols_; ++j) {
            std::fill(col.begin(), col.end(), 0.0);
            for (const auto& [i, v] : col_entries_[j]) col[i] = v;
            lu.solve(col);
            for (std::size_t i = 0; i < m_; ++i) tab_[i * cols_ + j] = col[i];
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[i])) {
                double* r = row(i);
                std::fill(r, r + cols_, 0.0);
                r[basis_[i]] = 1.0;
                // other rows already have exact zeros up to rounding; enforce
            }
        }
        for (std::size_t i = 0; i < m_; ++i)
            if (!is_artificial(basis_[i]))
                for (std::size_t k = 0; k < m_; ++k)
                    if (k != i) tab_[k * cols_ + basis_[i]] = 0.0;
        beta_ = basic_values(lu);
        set_costs(active_cost_, artificial_cost_);
    }

    void fill_basis_column(DenseLu& lu, std::size_t pos) {
        const std::size_t b = basis_[pos];
        if (is_artificial(b)) {
            lu.at(b - cols_, pos) = art_sign_[b - cols_];
            return;
        }
        for (const auto& [i, v] : col_entries_[b]) lu.at(i, pos) = v;
    }

    std::vector<double> basic_values(const DenseLu& lu) const {
        std::vector<double> r(rhs_);
        for (std::size_t j = 0; j < cols_; ++j) {
            if (state_[j] == VarState::Basic) continue;
            for (const auto& [i, v] : col_entries_[j]) r[i] -= v * x_[j];
        }
        lu.solve(r);
        return r;
    }

    /// Fresh factorization of the final basis; fills `sol` and reports whether
    /// primal and dual checks hold.
    bool certify(LpSolution& sol) {
        DenseLu lu(m_);
        for (std::size_t i = 0; i < m_; ++i) fill_basis_column(lu, i);
        if (!lu.factor()) return false;
        const std::vector<double> xb = basic_values(lu);

        std::vector<double> full(cols_);
        for (std::size_t j = 0; j < cols_; ++j) full[j] = x_[j];
        double worst = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t b = basis_[i];
            const double v = xb[i];
            if (is_artificial(b)) {
                worst = std::max(worst, std::abs(v));
                continue;
            }
            full[b] = v;
            const double scale = 1.0 + std::max(std::abs(lo_[b]), hi_[b] < kInf ? std::abs(hi_[b]) : 0.0);
            worst = std::max(worst, (lo_[b] - v) / scale);
            if (hi_[b] < kInf) worst = std::max(worst, (v - hi_[b]) / scale);
        }
        // row residuals against the original (scaled) rows
        std::vector<double> act(m_, 0.0);
        for (std::size_t j = 0; j < cols_; ++j)
            for (const auto& [i, v] : col_entries_[j]) act[i] += v * full[j];
        for (std::size_t i = 0; i < m_; ++i) worst = std::max(worst, std::abs(act[i] - rhs_[i]));
        sol.max_residual = worst;

        // duals and reduced costs
        std::vector<double> y(m_);
        for (std::size_t i = 0; i < m_; ++i) y[i] = is_artificial(basis_[i]) ? 0.0 : cost_[basis_[i]];
        lu.solve_transposed(y);
        double cmax = 0.0;
        for (double c : cost_) cmax = std::max(cmax, std::abs(c));
        const double dtol = opt_.optimality_tol * 10.0 * (1.0 + cmax);
        std::vector<double> rc(cols_);
        bool dual_ok = true;
        for (std::size_t j = 0; j < cols_; ++j) {
            double dj = cost_[j];
            for (const auto& [i, v] : col_entries_[j]) dj -= y[i] * v;
            rc[j] = dj;
            if (state_[j] == VarState::Basic || lo_[j] == hi_[j]) continue;
            if (state_[j] == VarState::AtLower && dj < -dtol) dual_ok = false;
            if (state_[j] == VarState::AtUpper && dj > dtol) dual_ok = false;
        }

        sol.x.assign(full.begin(), full.begin() + static_cast<long>(n_));
        sol.reduced_costs.assign(rc.begin(), rc.begin() + static_cast<long>(n_));
        double obj = 0.0;
        for (std::size_t j = 0; j < n_; ++j) obj += cost_[j] * sol.x[j];
        sol.objective = obj;
        return dual_ok && worst <= opt_.feasibility_tol;
    }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options) {
    if (problem.num_vars() == 0) throw PreconditionError("LP has no variables");
    Simplex s(problem, options);
    return s.run();
}

void write_lp_text(const LpProblem& problem, std::ostream& out) {
    auto name = [&](std::size_t j) {
        return j < problem.names.size() && !problem.names[j].empty() ? problem.names[j]
                                                                     : "x" + std::to_string(j);
    };
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return s.str();
    };
    auto term = [&](double v, std::size_t j) {
        return std::string(v < 0 ? " - " : " + ") + num(std::abs(v)) + " " + name(j);
    };
    out << "\\ " << problem.num_vars() << " variables, " << problem.rows.size() << " rows\n";
    out << "Minimize\n obj:";
    bool any = false;
    for (std::size_t j = 0; j < problem.num_vars(); ++j) {
        if (problem.objective[j] == 0.0) continue;
        out << term(problem.objective[j], j);
        any = true;
    }
    if (!any) out << " 0 " << name(0);
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < problem.rows.size(); ++i) {
        const LpRow& r = problem.rows[i];
        out << ' ' << (r.name.empty() ? "r" + std::to_string(i + 1) : r.name) << ':';
        for (auto [c, v] : r.coeffs) out << term(v, static_cast<std::size_t>(c));
        out << (r.relation == Relation::LessEqual ? " <= " : r.relation == Relation::Equal ? " = " : " >= ")
            << num(r.rhs) << '\n';
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < problem.num_vars(); ++j) {
        if (problem.lower[j] == problem.upper[j]) {
            out << ' ' << name(j) << " = " << num(problem.lower[j]) << '\n';
        } else {
            out << ' ' << num(problem.lower[j]) << " <= " << name(j);
            if (problem.upper[j] < kInf) out << " <= " << num(problem.upper[j]);
            out << '\n';
        }
    }
    out << "End\n";
}

}  // namespace pond
