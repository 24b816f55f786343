#include <algorithm>
#include <cmath>
#include <sstream>

#include "pond/report.hpp"
#include "pond/validation.hpp"

namespace pond::validation {

double schedule_residual(const OutflowSchedule& s, const PondParams& params, const std::vector<double>& forecast) {
    const double c = params.dt / (2.0 * params.area);
    double worst = 0.0;
    for (std::size_t t = 1; t < s.outflows.size(); ++t) {
        const double r = s.depths[t] - s.depths[t - 1] -
                         c * (forecast[t - 1] + forecast[t] - s.outflows[t - 1] - s.outflows[t]);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

std::vector<std::string> check_trace(const SimulationTrace& trace, const PondParams& params, double mass_tol) {
    std::vector<std::string> bad;
    auto fail = [&](std::size_t k, const std::string& what) {
        std::ostringstream os;
        os << trace.name << " row " << k << ": " << what;
        bad.push_back(os.str());
    };
    if (trace.rows.empty()) {
        bad.push_back(trace.name + ": empty trace");
        return bad;
    }
    for (std::size_t k = 0; k < trace.rows.size(); ++k) {
        const auto& r = trace.rows[k];
        if (!(r.depth >= 0.0 && r.depth <= params.h_max)) fail(k, "depth outside [0, h_max]");
        if (!(r.realized >= 0.0)) fail(k, "negative outflow");
        if (!(r.overflow_step >= 0.0)) fail(k, "negative overflow");
        if (r.realized > r.commanded) fail(k, "realized outflow above command");
        if (r.mode != Mode::Static && (r.commanded > params.q_max || r.commanded < 0.0))
            fail(k, "command outside [0, q_max]");
        if (k > 0 && static_cast<double>(r.time - trace.rows[k - 1].time) != trace.dt) fail(k, "non-uniform time");
    }
    const MassBalance mb = mass_balance(trace, params);
    if (!(mb.relative_error <= mass_tol)) {
        std::ostringstream os;
        os << trace.name << ": mass balance off by " << mb.relative_error << " of inflow volume";
        bad.push_back(os.str());
    }
    return bad;
}

}  // namespace pond::validation
