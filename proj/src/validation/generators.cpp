#include <algorithm>

#include "pond/validation.hpp"

namespace pond::validation {

PondInstance random_pond_instance(std::mt19937_64& rng, int n_min, int n_max, bool pin_initial_outflow) {
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    static constexpr double kSteps[] = {60.0, 300.0, 600.0, 900.0};

    PondInstance inst;
    const int n = std::uniform_int_distribution<int>(n_min, n_max)(rng);
    inst.params.n_c = n;
    inst.params.dt = kSteps[std::uniform_int_distribution<int>(0, 3)(rng)];
    inst.params.area = uni(500.0, 60000.0);
    inst.params.h_max = uni(0.3, 2.5);
    const double capacity = inst.params.capacity();
    inst.initial_depth = chance(0.25) ? 0.0 : uni(0.0, inst.params.h_max);

    inst.forecast.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (auto& v : inst.forecast) v = chance(0.3) ? 0.0 : uni(0.0, 1.0);
    double volume = 0.0;
    for (int t = 1; t <= n; ++t) volume += 0.5 * inst.params.dt * (inst.forecast[t - 1] + inst.forecast[t]);
    if (volume > 0.0) {
        const double scale = capacity * uni(0.1, 2.0) / volume;
        for (auto& v : inst.forecast) v *= scale;
    }

    const double horizon = n * inst.params.dt;
    inst.params.q_max = chance(0.4) ? capacity * uni(5.0, 20.0) / horizon : capacity * uni(0.05, 1.5) / horizon;
    if (pin_initial_outflow) inst.initial_outflow = chance(0.3) ? 0.0 : uni(0.0, inst.params.q_max);
    return inst;
}

LpProblem random_small_lp(std::mt19937_64& rng, int n_vars, int n_rows) {
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

    LpProblem lp;
    std::vector<double> x0;
    for (int j = 0; j < n_vars; ++j) {
        const double lo = uni(-5.0, 5.0);
        const double hi = lo + uni(0.5, 10.0);
        lp.add_variable(uni(-5.0, 5.0), lo, hi, "x" + std::to_string(j));
        x0.push_back(uni(lo, hi));
    }
    for (int i = 0; i < n_rows; ++i) {
        LpRow row;
        row.name = "r" + std::to_string(i);
        double ax = 0.0;
        for (int j = 0; j < n_vars; ++j) {
            if (chance(0.3)) continue;
            const double a = uni(-3.0, 3.0);
            row.coeffs.emplace_back(j, a);
            ax += a * x0[j];
        }
        if (row.coeffs.empty()) row.coeffs.emplace_back(i % n_vars, 1.0), ax = x0[i % n_vars];
        const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
        row.relation = kind == 0 ? Relation::LessEqual : kind == 1 ? Relation::GreaterEqual : Relation::Equal;
        row.rhs = row.relation == Relation::LessEqual ? ax + uni(0.0, 2.0)
                : row.relation == Relation::GreaterEqual ? ax - uni(0.0, 2.0)
                                                          : ax;
        // occasionally push the row off the box so infeasible cases are covered
        if (chance(0.08)) row.rhs += row.relation == Relation::GreaterEqual ? 200.0 : -200.0;
        lp.add_row(std::move(row));
    }
    return lp;
}

}  // namespace pond::validation
