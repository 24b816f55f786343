// pondctl: run, compare, plan and validate predictive pond control.
//
// Exit codes: 0 ok, 1 usage, 2 data/config/IO, 3 numerical/internal.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>

#include "pond/controller.hpp"
#include "pond/errors.hpp"
#include "pond/optimizer.hpp"
#include "pond/report.hpp"
#include "pond/scenario_io.hpp"
#include "pond/validation.hpp"

namespace fs = std::filesystem;
using namespace pond;

namespace {

struct Inputs {
    std::string config;
    std::string inflow;
    std::string rain;
};

void add_inputs(CLI::App* cmd, Inputs& in) {
    cmd->add_option("--config", in.config, "pond configuration (key = value)")->required();
    auto* inflow = cmd->add_option("--inflow", in.inflow, "inflow series CSV (time_s,value in m3/s)");
    auto* rain = cmd->add_option("--rain", in.rain, "rainfall series CSV (time_s,value in mm per step)");
    inflow->excludes(rain);
}

Scenario load_scenario(const Inputs& in, const LoadedConfig& cfg) {
    if (!in.inflow.empty())
        return make_scenario(fs::path(in.inflow).stem().string(), load_series_csv(in.inflow, cfg.params.dt));
    if (!in.rain.empty()) {
        if (!cfg.catchment)
            throw ConfigError("--rain needs catchment_area_m2, runoff_coefficient and reservoir_time_s in " +
                              in.config);
        return make_scenario_from_rain(fs::path(in.rain).stem().string(), load_series_csv(in.rain, cfg.params.dt),
                                       *cfg.catchment);
    }
    throw CLI::ValidationError("one of --inflow or --rain is required");
}

StaticBaselineSpec baseline_spec(const std::string& kind, double coefficient_area) {
    if (kind == "orifice") return {StaticBaselineSpec::Kind::Orifice, coefficient_area};
    return {StaticBaselineSpec::Kind::Passthrough, 0.0};
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
    return p.parent_path() / (p.stem().string() + suffix + p.extension().string());
}

void write_lp_file(const LpProblem& lp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write LP file '" + path + "'");
    write_lp_text(lp, out);
}

// The LP the controller would build at the first wet step.
void dump_first_wet_lp(const Scenario& s, const LoadedConfig& cfg, const std::string& path) {
    for (std::size_t k = 0; k < s.inflow.size(); ++k) {
        if (detect_mode(s.inflow[k], cfg.controller) != Mode::Wet) continue;
        SimulationRunner runner(s, cfg.params, cfg.controller);
        while (runner.trace().rows.size() <= k) runner.step();
        const ForecastWindow w = forecast_window(s, k, cfg.controller);
        write_lp_file(build_lp(cfg.params, runner.state().depth, w.inflow, runner.state().outflow), path);
        return;
    }
    throw ConfigError("scenario has no wet step; no LP to emit");
}

int cmd_run(const Inputs& in, const std::string& out, std::optional<double> tss_k, const std::string& emit_lp) {
    const LoadedConfig cfg = load_config(in.config);
    const Scenario s = load_scenario(in, cfg);
    if (!emit_lp.empty()) dump_first_wet_lp(s, cfg, emit_lp);
    SimulationTrace trace = run_simulation(s, cfg.params, cfg.controller);
    emit_trace_csv(trace, out);
    std::cout << format_report(metrics(trace, cfg.params, cfg.controller, tss_k), "dynamic control: " + s.name)
              << "trace written to " << out << '\n';
    return 0;
}

int cmd_compare(const Inputs& in, const std::string& out, const std::string& baseline, double coefficient_area,
                std::optional<double> tss_k) {
    const LoadedConfig cfg = load_config(in.config);
    const Scenario s = load_scenario(in, cfg);
    const StaticBaselineSpec spec = baseline_spec(baseline, coefficient_area);
    // both runs read the same immutable scenario
    auto fixed = std::async(std::launch::async, [&] {
        return static_baseline(s, cfg.params, spec, cfg.controller.initial_depth);
    });
    const SimulationTrace dyn = run_simulation(s, cfg.params, cfg.controller);
    const SimulationTrace stat = fixed.get();

    const fs::path dyn_path = out;
    const fs::path stat_path = sibling(dyn_path, "_static");
    emit_trace_csv(dyn, dyn_path);
    emit_trace_csv(stat, stat_path);
    const PerformanceReport rd = metrics(dyn, cfg.params, cfg.controller, tss_k);
    const PerformanceReport rs = metrics(stat, cfg.params, cfg.controller, tss_k);
    std::cout << format_report(rd, "dynamic control: " + s.name) << format_report(rs, "static " + baseline + ": " + s.name)
              << format_comparison(rd, rs) << "traces written to " << dyn_path.string() << " and "
              << stat_path.string() << '\n';
    return 0;
}

int cmd_plan(const std::string& config, const std::string& forecast_path, double depth,
             std::optional<double> initial_outflow, const std::string& emit_lp) {
    LoadedConfig cfg = load_config(config);
    TimeSeries f = load_series_csv(forecast_path, cfg.params.dt);
    const std::size_t want = static_cast<std::size_t>(cfg.params.n_c) + 1;
    if (f.values.size() > want) throw ConfigError("forecast longer than the planning horizon (n_c + 1 samples)");
    f.values.resize(want, 0.0);
    if (!emit_lp.empty()) write_lp_file(build_lp(cfg.params, depth, f.values, initial_outflow), emit_lp);

    const OutflowSchedule plan = plan_outflows(cfg.params, depth, f.values, initial_outflow);
    std::printf("total outflow %.6f m3/s, release volume %.3f m3, peak %.6f m3/s, %d steps solved\n",
                plan.total_outflow, plan.total_release_volume, plan.peak_outflow, plan.solved_steps);
    std::printf("time_s,inflow_m3s,outflow_m3s,depth_m\n");
    for (std::size_t t = 0; t < plan.outflows.size(); ++t) {
        std::printf("%lld,%s,%s,%s\n", static_cast<long long>(f.start_time) + static_cast<long long>(t * cfg.params.dt),
                    format_double(f.values[t]).c_str(), format_double(plan.outflows[t]).c_str(),
                    format_double(plan.depths[t]).c_str());
    }
    return 0;
}

int cmd_fixtures(const std::string& dir) {
    fs::create_directories(dir);
    for (const Scenario& s : validation::bundled_scenarios()) {
        TimeSeries ts{s.start_time, s.dt, s.inflow};
        emit_series_csv(ts, fs::path(dir) / (s.name + ".csv"));
        if (!s.rainfall.empty())
            emit_series_csv(TimeSeries{s.start_time, s.dt, s.rainfall}, fs::path(dir) / (s.name + "_rain.csv"));
    }
    std::cout << "fixtures written to " << dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Predictive real-time control of a stormwater detention pond"};
    app.require_subcommand(1);

    Inputs run_in, cmp_in;
    std::string run_out, cmp_out, run_lp, baseline = "passthrough";
    double tss_k = -1.0, orifice_ca = 0.6;

    auto* run = app.add_subcommand("run", "simulate the controller on one scenario");
    add_inputs(run, run_in);
    run->add_option("--out", run_out, "trace CSV to write")->required();
    run->add_option("--tss-k", tss_k, "settling rate (1/s) for the TSS removal estimate")->check(CLI::NonNegativeNumber);
    run->add_option("--emit-lp", run_lp, "write the LP of the first wet step (CPLEX LP format)");

    auto* cmp = app.add_subcommand("compare", "controller vs static outlet on the same inflow");
    add_inputs(cmp, cmp_in);
    cmp->add_option("--out", cmp_out, "dynamic trace CSV; the static one gets a _static suffix")->required();
    cmp->add_option("--baseline", baseline, "static outlet")->check(CLI::IsMember({"passthrough", "orifice"}));
    cmp->add_option("--orifice-ca", orifice_ca, "discharge coefficient x orifice area (m2)")
        ->check(CLI::PositiveNumber);
    cmp->add_option("--tss-k", tss_k, "settling rate (1/s) for the TSS removal estimate")->check(CLI::NonNegativeNumber);

    std::string plan_cfg, plan_forecast, plan_lp;
    double plan_depth = 0.0, plan_q0 = -1.0;
    auto* plan = app.add_subcommand("plan", "solve one outflow plan from a depth and a forecast");
    plan->add_option("--config", plan_cfg, "pond configuration")->required();
    plan->add_option("--inflow", plan_forecast, "forecast CSV, zero-padded to n_c + 1 samples")->required();
    plan->add_option("--depth", plan_depth, "initial depth (m)")->check(CLI::NonNegativeNumber);
    plan->add_option("--initial-outflow", plan_q0, "pin Q(0) to this rate (m3/s)")->check(CLI::NonNegativeNumber);
    plan->add_option("--emit-lp", plan_lp, "write the stage-one LP (CPLEX LP format)");

    int instances = 200;
    std::uint64_t seed = validation::SuiteOptions{}.seed;
    auto* val = app.add_subcommand("validate", "oracle and invariant checks on bundled fixtures");
    val->add_option("--instances", instances, "random LP instances")->check(CLI::PositiveNumber);
    val->add_option("--seed", seed, "random seed");

    std::string fixture_dir = "data";
    auto* fix = app.add_subcommand("fixtures", "write the bundled scenarios as CSV");
    fix->add_option("--dir", fixture_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::optional<double> k = tss_k >= 0.0 ? std::optional<double>(tss_k) : std::nullopt;
    try {
        if (*run) return cmd_run(run_in, run_out, k, run_lp);
        if (*cmp) return cmd_compare(cmp_in, cmp_out, baseline, orifice_ca, k);
        if (*plan)
            return cmd_plan(plan_cfg, plan_forecast, plan_depth,
                            plan_q0 >= 0.0 ? std::optional<double>(plan_q0) : std::nullopt, plan_lp);
        if (*val) return validation::run_validation_suite(std::cout, {instances, seed}) ? 0 : 3;
        if (*fix) return cmd_fixtures(fixture_dir);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const InfeasiblePlanError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
