#include <algorithm>

#include "pond/scenario_io.hpp"
#include "pond/validation.hpp"

namespace pond::validation {

PondParams reference_params() { return PondParams{51245.833, 1.2, 2.54, 300.0, 720}; }

ControllerConfig reference_config() { return ControllerConfig{}; }

std::vector<double> hydrograph(std::size_t steps, const std::vector<std::pair<double, double>>& knots) {
    std::vector<double> out(steps + 1, 0.0);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double x = static_cast<double>(k);
        for (std::size_t i = 1; i < knots.size(); ++i) {
            const auto [x0, y0] = knots[i - 1];
            const auto [x1, y1] = knots[i];
            if (x >= x0 && x <= x1 && x1 > x0) {
                out[k] = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
                break;
            }
        }
    }
    return out;
}

namespace {

Scenario make(std::string name, std::vector<double> inflow) {
    Scenario s;
    s.name = std::move(name);
    s.dt = 300.0;
    s.inflow = std::move(inflow);
    return s;
}

}  // namespace

Scenario storm_over_capacity() {
    // 3.5 h triangle, 0.5 * 13.2 * 12600 s = 83160 m3 against 61495 m3 of storage
    return make("storm_over_capacity", hydrograph(720, {{6, 0.0}, {27, 13.2}, {48, 0.0}}));
}

Scenario retention_storm() {
    // 21600 m3 storm, then a 540 m3 shower 48 h after it ends
    return make("retention_storm", hydrograph(760, {{6, 0.0}, {18, 6.0}, {30, 0.0}, {606, 0.0}, {612, 0.3}, {618, 0.0}}));
}

Scenario two_storms() {
    // 43200 m3, 12 h gap, then 64800 m3
    return make("two_storms",
                hydrograph(720, {{6, 0.0}, {24, 8.0}, {42, 0.0}, {186, 0.0}, {204, 12.0}, {222, 0.0}}));
}

Scenario all_dry(std::size_t steps) { return make("all_dry", std::vector<double>(steps + 1, 0.0)); }

Scenario rain_driven() {
    // 36 mm over 3 h on a 40 ha catchment
    std::vector<double> rain(721, 0.0);
    for (std::size_t k = 12; k < 48; ++k) rain[k] = 1.0;
    Scenario s;
    s.name = "rain_driven";
    s.dt = 300.0;
    s.rainfall = rain;
    s.inflow = rainfall_to_inflow(rain, CatchmentParams{400000.0, 0.6, 1800.0}, 300.0);
    return s;
}

std::vector<Scenario> bundled_scenarios() {
    return {storm_over_capacity(), retention_storm(), two_storms(), all_dry(), rain_driven()};
}

}  // namespace pond::validation
