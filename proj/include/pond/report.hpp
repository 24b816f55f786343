#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pond/config.hpp"
#include "pond/controller.hpp"
#include "pond/hydraulics.hpp"
#include "pond/scenario_io.hpp"

namespace pond {

inline constexpr double kGravity = 9.81;  ///< m/s2

struct StaticBaselineSpec {
    enum class Kind { Passthrough, Orifice };
    Kind kind = Kind::Passthrough;
    double coefficient_area = 0.0;  ///< discharge coefficient x orifice area (m2), orifice only

    void validate() const;
};

/// c sqrt(2 g H).
double orifice_outflow(double coefficient_area, double depth);

/// Uncontrolled outlet on the same inflow. Passthrough stores nothing; the
/// orifice discharges c sqrt(2 g H_k) over step k -> k+1 with no q_max cap.
SimulationTrace static_baseline(const Scenario& scenario, const PondParams& params, const StaticBaselineSpec& spec,
                                double initial_depth = 0.0);

struct DryEpisode {
    std::int64_t start_time = 0;  ///< s, first dry decision
    std::int64_t end_time = 0;    ///< s, last row of the episode
    double start_depth = 0.0;     ///< m, depth when the episode began
    double hold_span = 0.0;       ///< s with the gate shut before the first release
    bool released = false;
    bool retention_ok = false;    ///< empty at start, no release, or held >= settle_time first
};

struct PerformanceReport {
    double peak_outflow = 0.0;    ///< m3/s
    double release_volume = 0.0;  ///< m3
    double overflow_volume = 0.0; ///< m3
    double max_depth = 0.0;       ///< m
    double inflow_volume = 0.0;   ///< m3
    std::vector<DryEpisode> dry_episodes;
    std::optional<double> tss_removal;  ///< fraction, only when a settling rate is given
};

/// Everything here is recomputable from the trace rows alone. `tss_k` (1/s)
/// enables the settling estimate: each released parcel is credited with
/// 1 - exp(-k age), age being the time since inflow last exceeded the wet
/// threshold, weighted by release volume.
PerformanceReport metrics(const SimulationTrace& trace, const PondParams& params, const ControllerConfig& config,
                          std::optional<double> tss_k = std::nullopt);

struct MassBalance {
    double storage_change = 0.0;  ///< m3
    double inflow_volume = 0.0;   ///< m3
    double release_volume = 0.0;  ///< m3
    double overflow_volume = 0.0; ///< m3
    /// |storage change - (inflow - release - overflow)| over max(inflow volume, 1 m3)
    double relative_error = 0.0;
};

MassBalance mass_balance(const SimulationTrace& trace, const PondParams& params);

void write_trace_csv(const SimulationTrace& trace, std::ostream& out);
/// Throws IoError naming the path.
void emit_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path);
SimulationTrace parse_trace_csv(std::istream& in);
SimulationTrace load_trace_csv(const std::filesystem::path& path);

void write_series_csv(const TimeSeries& series, std::ostream& out);
void emit_series_csv(const TimeSeries& series, const std::filesystem::path& path);

std::string format_report(const PerformanceReport& report, const std::string& title);
std::string format_comparison(const PerformanceReport& dynamic, const PerformanceReport& baseline);

/// %.17g, enough to round-trip any double.
std::string format_double(double v);

}  // namespace pond
