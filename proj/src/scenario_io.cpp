#include "pond/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "pond/errors.hpp"

namespace pond {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::int64_t whole_seconds(double dt) {
    const double r = std::round(dt);
    if (!(dt > 0.0) || std::abs(dt - r) > 1e-9 * std::max(1.0, dt))
        throw PreconditionError("step length must be a whole number of seconds, got " + std::to_string(dt));
    return static_cast<std::int64_t>(r);
}

}  // namespace

int ControllerConfig::horizon_steps(double dt) const {
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    const double ratio = anticipation_horizon / dt;
    const double r = std::round(ratio);
    if (r < 1.0 || std::abs(ratio - r) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("anticipation horizon must be a whole number (>= 1) of steps");
    return static_cast<int>(r);
}

void ControllerConfig::validate(double dt) const {
    if (!(anticipation_horizon >= dt)) throw ConfigError("anticipation horizon shorter than one step");
    (void)horizon_steps(dt);
    if (!(wet_threshold >= 0.0)) throw ConfigError("wet threshold must be >= 0");
    if (!(settle_time > 0.0)) throw ConfigError("settle time must be > 0");
    if (!(initial_depth >= 0.0)) throw ConfigError("initial depth must be >= 0");
    if (forecast.kind == ForecastMode::Kind::Degraded && !(forecast.noise >= 0.0))
        throw ConfigError("forecast noise must be >= 0");
}

void CatchmentParams::validate() const {
    if (!(area > 0.0) || !std::isfinite(area)) throw PreconditionError("catchment area must be > 0");
    if (!(runoff_coefficient >= 0.0 && runoff_coefficient <= 1.0))
        throw PreconditionError("runoff coefficient must be in [0, 1]");
    if (!(time_constant > 0.0) || !std::isfinite(time_constant))
        throw PreconditionError("reservoir time constant must be > 0");
}

void Scenario::validate() const {
    if (!(dt > 0.0)) throw PreconditionError("scenario dt must be > 0");
    if (inflow.empty()) throw PreconditionError("scenario '" + name + "' has no inflow samples");
    for (double v : inflow)
        if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("scenario inflow must be finite and >= 0");
    for (double v : rainfall)
        if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("scenario rainfall must be finite and >= 0");
}

TimeSeries parse_series_csv(std::istream& in, double expected_dt) {
    const std::int64_t step = whole_seconds(expected_dt);
    TimeSeries out;
    out.dt = expected_dt;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::optional<std::int64_t> prev_time;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (lineno == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        view = trim(view);
        if (view.empty()) continue;
        if (!header_seen) {
            if (view != "time_s,value") throw ParseError("expected header 'time_s,value'", lineno);
            header_seen = true;
            continue;
        }
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
            throw ParseError("malformed row", lineno);
        const auto t = parse_int(view.substr(0, comma));
        const auto v = parse_double(view.substr(comma + 1));
        if (!t || !v || !std::isfinite(*v)) throw ParseError("malformed row", lineno);
        if (*v < 0.0) throw ParseError("negative value", lineno);
        if (prev_time && *t - *prev_time != step) throw ParseError("non-uniform step", lineno);
        if (!prev_time) out.start_time = *t;
        prev_time = t;
        out.values.push_back(*v);
    }
    if (!header_seen) throw ParseError("missing header 'time_s,value'", 1);
    if (out.values.empty()) throw ParseError("no data rows", lineno);
    return out;
}

TimeSeries load_series_csv(const std::filesystem::path& path, double expected_dt) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open series file '" + path.string() + "'");
    try {
        return parse_series_csv(in, expected_dt);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<double> rainfall_to_inflow(std::span<const double> rain_mm, const CatchmentParams& catchment,
                                       double dt) {
    catchment.validate();
    if (!(dt > 0.0)) throw PreconditionError("dt must be > 0");
    const double keep = std::exp(-dt / catchment.time_constant);
    std::vector<double> out;
    out.reserve(rain_mm.size());
    double q = 0.0;
    for (double r : rain_mm) {
        if (!(r >= 0.0)) throw PreconditionError("rainfall must be >= 0");
        const double effective = catchment.runoff_coefficient * (r / 1000.0) * catchment.area / dt;
        q = keep * q + (1.0 - keep) * effective;
        out.push_back(q);
    }
    return out;
}

ForecastWindow forecast_window(const Scenario& scenario, std::size_t now_step, const ControllerConfig& config) {
    if (now_step >= scenario.inflow.size()) throw PreconditionError("forecast requested past scenario end");
    const int n = config.horizon_steps(scenario.dt);
    ForecastWindow w;
    w.now = static_cast<double>(now_step) * scenario.dt;
    w.inflow.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n) && now_step + k < scenario.inflow.size(); ++k)
        w.inflow[k] = scenario.inflow[now_step + k];

    if (config.forecast.kind == ForecastMode::Kind::Degraded && config.forecast.noise > 0.0) {
        std::mt19937_64 rng(config.forecast.seed ^ (0x9E3779B97F4A7C15ULL * (now_step + 1)));
        std::normal_distribution<double> z(0.0, 1.0);
        for (std::size_t k = 1; k < w.inflow.size(); ++k)
            w.inflow[k] *= std::max(0.0, 1.0 + config.forecast.noise * z(rng));
    }

    for (std::size_t k = 0; k < w.inflow.size(); ++k) {
        if (w.inflow[k] > config.wet_threshold) {
            w.t_next_rain = static_cast<double>(k) * scenario.dt;
            break;
        }
    }

    // end of the latest observed wet episode (now, if still raining)
    w.t_f = 0.0;
    for (std::size_t j = now_step + 1; j-- > 0;) {
        if (scenario.inflow[j] > config.wet_threshold) {
            w.t_f = j == now_step ? w.now : static_cast<double>(j + 1) * scenario.dt;
            break;
        }
    }
    return w;
}

LoadedConfig parse_config(std::string_view text) {
    std::map<std::string, std::pair<std::string, int>> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v = line;
        if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
        v = trim(v);
        if (v.empty()) continue;
        const auto eq = v.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'key = value' at line " + std::to_string(lineno));
        const std::string key(trim(v.substr(0, eq)));
        const std::string value(trim(v.substr(eq + 1)));
        if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
        if (!kv.emplace(key, std::make_pair(value, lineno)).second)
            throw ConfigError("duplicate key '" + key + "' at line " + std::to_string(lineno));
    }

    static const char* const known[] = {"area_m2",         "h_max_m",        "q_max_m3s",         "dt_s",
                                        "horizon_hours",   "settle_hours",   "wet_threshold_m3s", "te_mode",
                                        "initial_depth_m", "forecast_noise", "forecast_seed",     "catchment_area_m2",
                                        "runoff_coefficient", "reservoir_time_s"};
    for (const auto& [key, val] : kv) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigError("unknown key '" + key + "' at line " + std::to_string(val.second));
    }

    auto number = [&](const std::string& key) -> std::optional<double> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        const auto v = parse_double(it->second.first);
        if (!v || !std::isfinite(*v))
            throw ConfigError("unparsable number for key '" + key + "': '" + it->second.first + "'");
        return v;
    };
    auto required = [&](const std::string& key) {
        const auto v = number(key);
        if (!v) throw ConfigError("missing required key '" + key + "'");
        return *v;
    };

    LoadedConfig cfg;
    cfg.params.area = required("area_m2");
    cfg.params.h_max = required("h_max_m");
    cfg.params.q_max = required("q_max_m3s");
    cfg.params.dt = required("dt_s");
    cfg.controller.anticipation_horizon = required("horizon_hours") * 3600.0;
    if (auto v = number("settle_hours")) cfg.controller.settle_time = *v * 3600.0;
    if (auto v = number("wet_threshold_m3s")) cfg.controller.wet_threshold = *v;
    if (auto v = number("initial_depth_m")) cfg.controller.initial_depth = *v;
    if (auto it = kv.find("te_mode"); it != kv.end()) {
        if (it->second.first == "drain_at_qmax") cfg.controller.te_mode = TeMode::DrainAtQmax;
        else if (it->second.first == "paper_literal") cfg.controller.te_mode = TeMode::PaperLiteral;
        else throw ConfigError("te_mode must be drain_at_qmax or paper_literal, got '" + it->second.first + "'");
    }
    if (auto v = number("forecast_noise"); v && *v > 0.0) {
        cfg.controller.forecast.kind = ForecastMode::Kind::Degraded;
        cfg.controller.forecast.noise = *v;
    }
    if (auto it = kv.find("forecast_seed"); it != kv.end()) {
        const auto s = parse_int(it->second.first);
        if (!s || *s < 0) throw ConfigError("forecast_seed must be a non-negative integer");
        cfg.controller.forecast.seed = static_cast<std::uint64_t>(*s);
    }

    const auto c_area = number("catchment_area_m2");
    const auto c_coef = number("runoff_coefficient");
    const auto c_time = number("reservoir_time_s");
    const int given = (c_area ? 1 : 0) + (c_coef ? 1 : 0) + (c_time ? 1 : 0);
    if (given != 0 && given != 3)
        throw ConfigError("catchment needs catchment_area_m2, runoff_coefficient and reservoir_time_s together");
    if (given == 3) cfg.catchment = CatchmentParams{*c_area, *c_coef, *c_time};

    try {
        (void)whole_seconds(cfg.params.dt);
        cfg.params.n_c = cfg.controller.horizon_steps(cfg.params.dt);
        cfg.params.validate();
        cfg.controller.validate(cfg.params.dt);
        if (cfg.catchment) cfg.catchment->validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
    if (cfg.controller.initial_depth > cfg.params.h_max) throw ConfigError("initial_depth_m exceeds h_max_m");
    return cfg;
}

LoadedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

Scenario make_scenario(std::string name, const TimeSeries& inflow) {
    Scenario s;
    s.name = std::move(name);
    s.start_time = inflow.start_time;
    s.dt = inflow.dt;
    s.inflow = inflow.values;
    s.validate();
    return s;
}

Scenario make_scenario_from_rain(std::string name, const TimeSeries& rain_mm, const CatchmentParams& catchment) {
    Scenario s;
    s.name = std::move(name);
    s.start_time = rain_mm.start_time;
    s.dt = rain_mm.dt;
    s.rainfall = rain_mm.values;
    s.inflow = rainfall_to_inflow(rain_mm.values, catchment, rain_mm.dt);
    s.validate();
    return s;
}

}  // namespace pond
