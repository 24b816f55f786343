#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pond/config.hpp"
#include "pond/hydraulics.hpp"

namespace pond {

struct TimeSeries {
    std::int64_t start_time = 0;  ///< s
    double dt = 0.0;              ///< s
    std::vector<double> values;
};

/// Reads a `time_s,value` CSV with integer-second timestamps spaced exactly
/// expected_dt apart. Errors carry the 1-based line number.
TimeSeries load_series_csv(const std::filesystem::path& path, double expected_dt);
TimeSeries parse_series_csv(std::istream& in, double expected_dt);

/// Runoff coefficient x rain depth x area, routed through one linear
/// reservoir: q_k = a q_{k-1} + (1 - a) e_k with a = exp(-dt / K).
std::vector<double> rainfall_to_inflow(std::span<const double> rain_mm, const CatchmentParams& catchment,
                                       double dt);

/// Forecast visible at `now_step`: n_c + 1 samples (zero past the scenario
/// end), time to the first sample above the wet threshold (infinity when
/// none) and the end of the most recent wet episode.
ForecastWindow forecast_window(const Scenario& scenario, std::size_t now_step, const ControllerConfig& config);

struct LoadedConfig {
    PondParams params;
    ControllerConfig controller;
    std::optional<CatchmentParams> catchment;
};

/// `key = value` lines with `#` comments. Required: area_m2, h_max_m,
/// q_max_m3s, dt_s, horizon_hours. Unknown keys are rejected.
LoadedConfig load_config(const std::filesystem::path& path);
LoadedConfig parse_config(std::string_view text);

/// Scenario from a loaded inflow series.
Scenario make_scenario(std::string name, const TimeSeries& inflow);

/// Scenario whose inflow comes from rainfall through the catchment stand-in.
Scenario make_scenario_from_rain(std::string name, const TimeSeries& rain_mm, const CatchmentParams& catchment);

}  // namespace pond
