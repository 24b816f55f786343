#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pond/rules.hpp"

namespace pond {

/// How the controller sees the future. Perfect slices the true series;
/// Degraded multiplies each future sample by max(0, 1 + noise * z) with a
/// seeded standard normal z, so runs stay reproducible.
struct ForecastMode {
    enum class Kind { Perfect, Degraded };
    Kind kind = Kind::Perfect;
    double noise = 0.0;
    std::uint64_t seed = 1;
};

struct ControllerConfig {
    double anticipation_horizon = 216000.0;  ///< s (60 h)
    double wet_threshold = 1e-3;             ///< m3/s
    double settle_time = 72000.0;            ///< s (20 h)
    TeMode te_mode = TeMode::DrainAtQmax;
    double initial_depth = 0.0;              ///< m
    ForecastMode forecast;

    /// anticipation_horizon / dt; throws ConfigError unless it is a whole number >= 1.
    int horizon_steps(double dt) const;
    void validate(double dt) const;
};

/// Stand-in for an upstream runoff model: rain -> linear reservoir.
struct CatchmentParams {
    double area = 0.0;               ///< contributing area (m2)
    double runoff_coefficient = 0.0; ///< [0, 1]
    double time_constant = 0.0;      ///< linear reservoir constant (s)

    void validate() const;
};

struct Scenario {
    std::string name;
    std::int64_t start_time = 0;  ///< s
    double dt = 300.0;            ///< s
    std::vector<double> inflow;   ///< m3/s, one sample per step
    std::vector<double> rainfall; ///< mm per step, optional

    std::int64_t time_at(std::size_t step) const {
        return start_time + static_cast<std::int64_t>(step) * static_cast<std::int64_t>(dt);
    }
    void validate() const;
};

/// What the controller may see at one instant.
struct ForecastWindow {
    std::vector<double> inflow;  ///< n_c + 1 samples starting at `now`
    double t_next_rain = std::numeric_limits<double>::infinity();  ///< s from now
    double t_f = 0.0;  ///< clock time the previous rain ended (s)
    double now = 0.0;  ///< clock time (s)
};

}  // namespace pond
