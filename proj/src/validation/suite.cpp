#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "pond/errors.hpp"
#include "pond/report.hpp"
#include "pond/validation.hpp"

namespace pond::validation {

namespace {

bool report_line(std::ostream& out, bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "ok    " : "FAIL  ") << name << "  " << detail << '\n';
    return ok;
}

std::string trace_text(const SimulationTrace& t) {
    std::ostringstream os;
    write_trace_csv(t, os);
    return os.str();
}

}  // namespace

bool run_validation_suite(std::ostream& out, const SuiteOptions& options) {
    bool all = true;
    std::mt19937_64 rng(options.seed);

    {
        int compared = 0, mismatched = 0, infeasible = 0;
        double worst = 0.0;
        const auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < options.lp_instances; ++i) {
            const PondInstance inst = random_pond_instance(rng, 1, 6, i % 2 == 1);
            const auto oracle = enumerate_pond_lp(inst.params, inst.initial_depth, inst.forecast, inst.initial_outflow);
            try {
                const auto plan = plan_outflows(inst.params, inst.initial_depth, inst.forecast, inst.initial_outflow);
                if (!oracle.feasible) {
                    ++mismatched;
                    continue;
                }
                const double err = std::abs(plan.total_release_volume - oracle.release_volume) /
                                   std::max(1.0, std::abs(oracle.release_volume));
                worst = std::max(worst, err);
                if (err > 1e-8) ++mismatched;
                ++compared;
            } catch (const InfeasiblePlanError&) {
                if (oracle.feasible) ++mismatched;
                ++infeasible;
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream d;
        d << compared << " feasible + " << infeasible << " infeasible, worst rel. error " << worst << ", " << secs
          << " s";
        all &= report_line(out, mismatched == 0, "pond LP vs vertex enumeration", d.str());
    }

    {
        int mismatched = 0, count = 0;
        for (int i = 0; i < 150; ++i) {
            const int n = std::uniform_int_distribution<int>(1, 7)(rng);
            const int m = std::uniform_int_distribution<int>(0, 4)(rng);
            const LpProblem lp = random_small_lp(rng, n, m);
            const auto oracle = enumerate_lp(lp);
            const auto sol = solve_lp(lp);
            ++count;
            if (oracle.feasible != (sol.status == LpStatus::Optimal)) ++mismatched;
            else if (oracle.feasible &&
                     std::abs(oracle.objective - sol.objective) > 1e-7 * std::max(1.0, std::abs(oracle.objective)))
                ++mismatched;
        }
        all &= report_line(out, mismatched == 0, "simplex vs vertex enumeration",
                           std::to_string(count) + " random LPs, " + std::to_string(mismatched) + " mismatches");
    }

    const PondParams params = reference_params();
    const ControllerConfig config = reference_config();
    for (const Scenario& s : bundled_scenarios()) {
        const SimulationTrace dyn = run_simulation(s, params, config);
        const SimulationTrace pass = static_baseline(s, params, StaticBaselineSpec{});
        const SimulationTrace orif =
            static_baseline(s, params, StaticBaselineSpec{StaticBaselineSpec::Kind::Orifice, 0.6});
        std::vector<std::string> bad = check_trace(dyn, params);
        for (const auto* t : {&pass, &orif}) {
            auto more = check_trace(*t, params);
            bad.insert(bad.end(), more.begin(), more.end());
        }
        if (trace_text(dyn) != trace_text(run_simulation(s, params, config))) bad.push_back("non-deterministic trace");
        const auto rep = metrics(dyn, params, config);
        std::ostringstream d;
        d << "peak " << rep.peak_outflow << " m3/s, overflow " << rep.overflow_volume << " m3";
        if (!bad.empty()) d << "; " << bad.front();
        all &= report_line(out, bad.empty(), "scenario " + s.name, d.str());
    }
    return all;
}

}  // namespace pond::validation
