#include "pond/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pond/errors.hpp"

namespace pond {

namespace {

constexpr const char* kTraceHeader = "time_s,inflow_m3s,commanded_m3s,realized_m3s,depth_m,overflow_m3,mode,rule";

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool read_double(std::string_view s, double& v) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

bool read_int(std::string_view s, std::int64_t& v) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::string_view strip_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void StaticBaselineSpec::validate() const {
    if (kind == Kind::Orifice && !(coefficient_area > 0.0 && std::isfinite(coefficient_area)))
        throw PreconditionError("orifice coefficient x area must be > 0");
}

double orifice_outflow(double coefficient_area, double depth) {
    return coefficient_area * std::sqrt(2.0 * kGravity * std::max(0.0, depth));
}

SimulationTrace static_baseline(const Scenario& scenario, const PondParams& params, const StaticBaselineSpec& spec,
                                double initial_depth) {
    scenario.validate();
    params.validate();
    spec.validate();
    if (!(initial_depth >= 0.0 && initial_depth <= params.h_max))
        throw PreconditionError("initial depth outside [0, h_max]");

    SimulationTrace trace;
    trace.name = scenario.name;
    trace.dt = scenario.dt;
    trace.rows.reserve(scenario.inflow.size());
    const bool passthrough = spec.kind == StaticBaselineSpec::Kind::Passthrough;
    const Action action = passthrough ? Action::Passthrough : Action::Orifice;

    PondState state;
    state.depth = initial_depth;
    if (passthrough) state.outflow = scenario.inflow[0];

    TraceRow row;
    row.time = scenario.time_at(0);
    row.inflow = scenario.inflow[0];
    row.commanded = state.outflow;
    row.realized = state.outflow;
    row.depth = state.depth;
    row.mode = Mode::Static;
    row.action = action;
    trace.rows.push_back(row);

    for (std::size_t k = 1; k < scenario.inflow.size(); ++k) {
        row.time = scenario.time_at(k);
        row.inflow = scenario.inflow[k];
        if (passthrough) {
            row.commanded = row.inflow;
            row.realized = row.inflow;
            row.overflow_step = 0.0;
        } else {
            const double cmd = orifice_outflow(spec.coefficient_area, state.depth);
            const RouteResult r =
                route_step_uncapped(state, params, scenario.inflow[k - 1], scenario.inflow[k], state.outflow, cmd);
            state = r.state;
            row.commanded = cmd;
            row.realized = r.realized_outflow;
            row.depth = state.depth;
            row.overflow_step = r.overflow_step;
        }
        trace.rows.push_back(row);
    }
    return trace;
}

PerformanceReport metrics(const SimulationTrace& trace, const PondParams& params, const ControllerConfig& config,
                          std::optional<double> tss_k) {
    if (trace.rows.empty()) throw PreconditionError("cannot report on an empty trace");
    if (tss_k && !(*tss_k >= 0.0)) throw PreconditionError("settling rate must be >= 0");
    const auto& rows = trace.rows;
    const double dt = trace.dt;

    PerformanceReport rep;
    for (const auto& r : rows) {
        rep.peak_outflow = std::max(rep.peak_outflow, r.realized);
        rep.max_depth = std::max(rep.max_depth, r.depth);
        rep.overflow_volume += r.overflow_step;
    }
    (void)params;

    double settled = 0.0;
    std::int64_t last_wet = rows.front().time;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double vol = trapezoid_volume(rows[k - 1].realized, rows[k].realized, dt);
        rep.release_volume += vol;
        rep.inflow_volume += trapezoid_volume(rows[k - 1].inflow, rows[k].inflow, dt);
        if (rows[k - 1].inflow > config.wet_threshold) last_wet = rows[k - 1].time;
        if (rows[k].inflow > config.wet_threshold) last_wet = rows[k].time;
        if (tss_k) settled += vol * (1.0 - std::exp(-*tss_k * static_cast<double>(rows[k].time - last_wet)));
    }
    if (tss_k) rep.tss_removal = rep.release_volume > 0.0 ? settled / rep.release_volume : 1.0;

    // dry episodes: maximal runs of rows decided in dry mode
    std::optional<DryEpisode> open;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& r = rows[k];
        if (r.mode != Mode::Dry) {
            if (open) rep.dry_episodes.push_back(*open);
            open.reset();
            continue;
        }
        if (!open) {
            open = DryEpisode{};
            open->start_time = rows[k - 1].time;
            open->start_depth = rows[k - 1].depth;
        }
        open->end_time = r.time;
        if (!open->released) {
            if (r.realized > 0.0) open->released = true;
            else if (r.commanded == 0.0) open->hold_span += dt;
        }
    }
    if (open) rep.dry_episodes.push_back(*open);
    for (auto& e : rep.dry_episodes)
        e.retention_ok = e.start_depth == 0.0 || !e.released || e.hold_span >= config.settle_time;
    return rep;
}

MassBalance mass_balance(const SimulationTrace& trace, const PondParams& params) {
    MassBalance mb;
    if (trace.rows.empty()) return mb;
    const auto& rows = trace.rows;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        mb.inflow_volume += trapezoid_volume(rows[k - 1].inflow, rows[k].inflow, trace.dt);
        mb.release_volume += trapezoid_volume(rows[k - 1].realized, rows[k].realized, trace.dt);
        mb.overflow_volume += rows[k].overflow_step;
    }
    mb.storage_change = params.area * (rows.back().depth - rows.front().depth);
    const double imbalance = mb.storage_change - (mb.inflow_volume - mb.release_volume - mb.overflow_volume);
    mb.relative_error = std::abs(imbalance) / std::max(mb.inflow_volume, 1.0);
    return mb;
}

void write_trace_csv(const SimulationTrace& trace, std::ostream& out) {
    out << kTraceHeader << '\n';
    for (const auto& r : trace.rows) {
        out << r.time << ',' << format_double(r.inflow) << ',' << format_double(r.commanded) << ','
            << format_double(r.realized) << ',' << format_double(r.depth) << ',' << format_double(r.overflow_step)
            << ',' << to_string(r.mode) << ',' << to_string(r.action) << '\n';
    }
}

void emit_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write trace file '" + path.string() + "'");
    write_trace_csv(trace, out);
    out.flush();
    if (!out) throw IoError("failed writing trace file '" + path.string() + "'");
}

SimulationTrace parse_trace_csv(std::istream& in) {
    SimulationTrace trace;
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view view = strip_cr(line);
        if (view.empty()) continue;
        if (!header) {
            if (view != kTraceHeader) throw ParseError("unexpected trace header", lineno);
            header = true;
            continue;
        }
        const auto f = split(view, ',');
        if (f.size() != 8) throw ParseError("malformed row", lineno);
        TraceRow r;
        if (!read_int(f[0], r.time) || !read_double(f[1], r.inflow) || !read_double(f[2], r.commanded) ||
            !read_double(f[3], r.realized) || !read_double(f[4], r.depth) || !read_double(f[5], r.overflow_step))
            throw ParseError("malformed row", lineno);
        try {
            r.mode = mode_from_string(f[6]);
            r.action = action_from_string(f[7]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
        trace.rows.push_back(r);
    }
    if (!header) throw ParseError("missing trace header", 1);
    if (trace.rows.size() >= 2) trace.dt = static_cast<double>(trace.rows[1].time - trace.rows[0].time);
    return trace;
}

SimulationTrace load_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open trace file '" + path.string() + "'");
    try {
        SimulationTrace t = parse_trace_csv(in);
        t.name = path.stem().string();
        return t;
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_series_csv(const TimeSeries& series, std::ostream& out) {
    out << "time_s,value\n";
    const auto step = static_cast<std::int64_t>(std::llround(series.dt));
    for (std::size_t k = 0; k < series.values.size(); ++k)
        out << series.start_time + static_cast<std::int64_t>(k) * step << ',' << format_double(series.values[k])
            << '\n';
}

void emit_series_csv(const TimeSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write series file '" + path.string() + "'");
    write_series_csv(series, out);
    out.flush();
    if (!out) throw IoError("failed writing series file '" + path.string() + "'");
}

std::string format_report(const PerformanceReport& r, const std::string& title) {
    std::ostringstream os;
    char buf[160];
    os << title << '\n';
    std::snprintf(buf, sizeof buf, "  peak outflow      %12.4f m3/s\n", r.peak_outflow);
    os << buf;
    std::snprintf(buf, sizeof buf, "  inflow volume     %12.1f m3\n", r.inflow_volume);
    os << buf;
    std::snprintf(buf, sizeof buf, "  release volume    %12.1f m3\n", r.release_volume);
    os << buf;
    std::snprintf(buf, sizeof buf, "  overflow volume   %12.1f m3\n", r.overflow_volume);
    os << buf;
    std::snprintf(buf, sizeof buf, "  max depth         %12.4f m\n", r.max_depth);
    os << buf;
    if (r.tss_removal) {
        std::snprintf(buf, sizeof buf, "  TSS removal est.  %12.3f (settling model, not measured)\n", *r.tss_removal);
        os << buf;
    }
    for (std::size_t i = 0; i < r.dry_episodes.size(); ++i) {
        const auto& e = r.dry_episodes[i];
        std::snprintf(buf, sizeof buf, "  dry episode %zu  t=%lld..%lld s  held %.1f h  %s  retention %s\n", i + 1,
                      static_cast<long long>(e.start_time), static_cast<long long>(e.end_time), e.hold_span / 3600.0,
                      e.released ? "released" : "no release", e.retention_ok ? "ok" : "short");
        os << buf;
    }
    return os.str();
}

std::string format_comparison(const PerformanceReport& dynamic, const PerformanceReport& baseline) {
    std::ostringstream os;
    char buf[160];
    os << "                      dynamic        static         delta\n";
    auto line = [&](const char* name, double d, double s, const char* unit) {
        std::snprintf(buf, sizeof buf, "  %-16s %12.4f  %12.4f  %12.4f %s\n", name, d, s, d - s, unit);
        os << buf;
    };
    line("peak outflow", dynamic.peak_outflow, baseline.peak_outflow, "m3/s");
    line("release volume", dynamic.release_volume, baseline.release_volume, "m3");
    line("overflow volume", dynamic.overflow_volume, baseline.overflow_volume, "m3");
    line("max depth", dynamic.max_depth, baseline.max_depth, "m");
    if (dynamic.tss_removal && baseline.tss_removal)
        line("TSS removal est.", *dynamic.tss_removal, *baseline.tss_removal, "");
    return os.str();
}

}  // namespace pond
