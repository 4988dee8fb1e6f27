// Mission planner CLI: single-circle and multi-region trajectory design,
// coverage verification, and threshold sweeps over scenario files.
//
// Exit codes: 0 success, 1 parse/validation failure, 2 verification failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isac/coverage_oracle.hpp"
#include "isac/multi_region.hpp"
#include "isac/scenario_io.hpp"
#include "isac/single_circle.hpp"

namespace {

int log_level() {
    const char* env = std::getenv("ISAC_LOG");
    if (!env) return 0;
    const std::string v = env;
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[isacplan] " << msg << "\n";
}

int run_plan_single(const std::string& scenario_path, const std::string& out_path) {
    const isac::Scenario sc = isac::load_scenario(scenario_path);
    const double pen = isac::single_plan_penetration(sc);
    const isac::SingleCirclePlan plan =
        isac::plan_single(sc.scanning_area, sc.r_th_bits, pen, sc.link, sc.vlim, sc.solver);
    log_info("single circle: r_u=" + std::to_string(plan.r_u_m) +
             " m, v=" + std::to_string(plan.angular_velocity_rad_s) +
             " rad/s, T=" + std::to_string(plan.completion_time_s) + " s");
    const isac::MissionPlan mission = isac::to_mission(plan, sc.scanning_area);
    nlohmann::json diag = {{"r_u_m", plan.r_u_m},
                           {"worst_corner_m", {plan.worst_corner.x, plan.worst_corner.y}},
                           {"data_at_worst_bits", plan.data_at_worst_bits},
                           {"clamped", plan.clamped},
                           {"balanced", plan.balanced}};
    isac::save_mission(mission, "single", out_path, diag);
    return 0;
}

int run_plan_multi(const std::string& scenario_path, const std::string& out_path) {
    const isac::Scenario sc = isac::load_scenario(scenario_path);
    const std::vector<isac::RegionSpec> regions = isac::make_region_specs(sc);
    const isac::MultiPlanResult result =
        isac::plan_multi(sc.scanning_area, sc.r_th_bits, regions, sc.link, sc.vlim, sc.solver);
    log_info("multi region: total=" + std::to_string(result.mission.total_time_s) + " s over " +
             std::to_string(result.mission.legs.size()) + " legs");
    nlohmann::json diag = {{"order", result.order},
                           {"big_r_u_m", result.big.r_u_m},
                           {"objective_trace_s", result.objective_trace},
                           {"connector_sum_m", result.state.connector_sum()}};
    isac::save_mission(result.mission, "multi", out_path, diag);
    return 0;
}

int run_verify(const std::string& scenario_path, const std::string& plan_path,
               const std::string& out_path, double grid_step, double dt) {
    const isac::Scenario sc = isac::load_scenario(scenario_path);
    const isac::MissionPlan plan = isac::load_mission(plan_path);
    isac::CoverageContext ctx = isac::make_coverage_context(sc);
    const double step = grid_step > 0 ? grid_step : sc.solver.grid_step;
    const double tstep = dt > 0 ? dt : sc.solver.dt;
    const isac::CoverageReport report = isac::verify(plan, ctx, step, tstep);
    isac::save_report(report, out_path);
    log_info("verify: min=" + std::to_string(report.min_delivered_bits) + " bits at (" +
             std::to_string(report.min_location.x) + ", " + std::to_string(report.min_location.y) +
             "), " + std::to_string(report.violations.size()) + " violations");
    return report.pass ? 0 : 2;
}

int run_sweep(const std::string& scenario_path, double rth_min, double rth_max, int steps,
              const std::string& out_path) {
    const isac::Scenario sc = isac::load_scenario(scenario_path);
    if (!(rth_min > 0) || !(rth_max > rth_min) || steps < 2)
        throw isac::ValidationError("sweep: need 0 < rth-min < rth-max and steps >= 2");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = rth_min + (rth_max - rth_min) * i / (steps - 1);
    const double pen = isac::single_plan_penetration(sc);
    const std::vector<isac::SavingsRow> rows =
        isac::savings_profile(sc.scanning_area, grid, pen, sc.link, sc.vlim, sc.solver);
    isac::save_sweep(rows, out_path);
    log_info("sweep: " + std::to_string(rows.size()) + " rows -> " + out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV coverage mission planner"};
    app.require_subcommand(1);

    std::string scenario_path, plan_path, out_path;
    double grid_step = 0.0, dt = 0.0;
    double rth_min = 0.0, rth_max = 0.0;
    int steps = 10;

    auto* plan_single = app.add_subcommand("plan-single", "optimize one circular trajectory");
    plan_single->add_option("--scenario", scenario_path, "scenario file")->required();
    plan_single->add_option("--out", out_path, "plan output file")->required();

    auto* plan_multi = app.add_subcommand("plan-multi", "optimize the two-phase region tour");
    plan_multi->add_option("--scenario", scenario_path, "scenario file")->required();
    plan_multi->add_option("--out", out_path, "plan output file")->required();

    auto* verify = app.add_subcommand("verify", "check a plan against the coverage grid");
    verify->add_option("--scenario", scenario_path, "scenario file")->required();
    verify->add_option("--plan", plan_path, "plan file to verify")->required();
    verify->add_option("--out", out_path, "report output file")->required();
    verify->add_option("--grid-step", grid_step, "grid step in meters (0 = auto)");
    verify->add_option("--dt", dt, "integration step in seconds (0 = auto)");

    auto* sweep = app.add_subcommand("sweep", "savings table over a threshold range");
    sweep->add_option("--scenario", scenario_path, "scenario file")->required();
    sweep->add_option("--rth-min", rth_min, "lowest data threshold, bits")->required();
    sweep->add_option("--rth-max", rth_max, "highest data threshold, bits")->required();
    sweep->add_option("--steps", steps, "number of grid rows");
    sweep->add_option("--out", out_path, "CSV output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan_single->parsed()) return run_plan_single(scenario_path, out_path);
        if (plan_multi->parsed()) return run_plan_multi(scenario_path, out_path);
        if (verify->parsed()) return run_verify(scenario_path, plan_path, out_path, grid_step, dt);
        if (sweep->parsed()) return run_sweep(scenario_path, rth_min, rth_max, steps, out_path);
    } catch (const isac::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const isac::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const isac::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
