#pragma once
/**
 * @file scenario_io.hpp
 * @brief Scenario ingestion and persistence of plans, reports and sweep
 *        tables. Scenario, plan and report files are canonical JSON (sorted
 *        keys, two-space indent, shortest round-trip numbers), sweeps are
 *        CSV with a header row. Field names carry their unit.
 */

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isac/coverage_oracle.hpp"
#include "isac/errors.hpp"
#include "isac/geometry.hpp"
#include "isac/linkbudget.hpp"
#include "isac/multi_region.hpp"
#include "isac/single_circle.hpp"
#include "isac/solver_config.hpp"

namespace isac {

inline constexpr double mph_to_mps = 0.44704;

/// A fully described planning problem.
struct Scenario {
    LinkParams link; ///< outdoor_penetration already derived at load
    Circle scanning_area{Point2D{0, 0}, 1000.0};
    bool area_indoor = false; ///< uniform penetration over the whole area
    std::vector<Circle> buildings;
    std::vector<double> building_r_th_bits; ///< aligned with buildings; 0 = default
    double outdoor_loss_delta_db = std::numeric_limits<double>::quiet_NaN(); ///< NaN = unset
    double r_th_bits = 0.0;
    VelocityLimit vlim;
    SolverConfig solver;
};

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* field,
                                     const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto it = j.find(field);
    if (it == j.end())
        throw ParseError(where + ": missing field '" + field + "'");
    return *it;
}

inline double require_number(const nlohmann::json& j, const char* field,
                             const std::string& where) {
    const auto& v = require(j, field, where);
    if (!v.is_number()) throw ParseError(where + ": field '" + field + "' must be a number");
    return v.get<double>();
}

inline Point2D parse_point(const nlohmann::json& j, const char* field, const std::string& where) {
    const auto& v = require(j, field, where);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ParseError(where + ": field '" + field + "' must be [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

/// Shortest round-trip decimal form, for deterministic CSV output.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

} // namespace detail

inline void validate_scenario(const Scenario& sc) {
    sc.link.validate();
    sc.vlim.validate();
    sc.solver.validate();
    if (!(sc.r_th_bits > 0)) throw ValidationError("scenario: r_th_bits must be > 0");
    const double R = sc.scanning_area.radius;
    for (std::size_t i = 0; i < sc.buildings.size(); ++i) {
        const auto& b = sc.buildings[i];
        if (b.center.distance_to(sc.scanning_area.center) + b.radius > R + 1e-9)
            throw ValidationError("scenario: building " + std::to_string(i) +
                                  " not inside the scanning area");
        for (std::size_t j = i + 1; j < sc.buildings.size(); ++j) {
            const auto& c = sc.buildings[j];
            if (b.center.distance_to(c.center) < b.radius + c.radius - 1e-9)
                throw ValidationError("scenario: buildings " + std::to_string(i) + " and " +
                                      std::to_string(j) + " overlap");
        }
    }
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    using detail::parse_point;
    using detail::require;
    using detail::require_number;
    Scenario sc;

    const auto& link = require(j, "link", "scenario");
    sc.link.carrier_ghz = require_number(link, "carrier_ghz", "scenario.link");
    sc.link.tx_power_dbm = require_number(link, "tx_power_dbm", "scenario.link");
    sc.link.noise_density_dbm_hz = require_number(link, "noise_density_dbm_hz", "scenario.link");
    sc.link.bandwidth_hz = require_number(link, "bandwidth_hz", "scenario.link");
    sc.link.half_beamwidth_rad = require_number(link, "half_beamwidth_rad", "scenario.link");
    sc.link.altitude_m = require_number(link, "altitude_m", "scenario.link");

    const auto& area = require(j, "scanning_area", "scenario");
    sc.scanning_area = Circle{parse_point(area, "center_m", "scenario.scanning_area"),
                              require_number(area, "radius_m", "scenario.scanning_area")};
    sc.area_indoor = area.value("indoor", false);

    if (auto it = j.find("buildings"); it != j.end()) {
        for (const auto& bj : *it) {
            sc.buildings.emplace_back(parse_point(bj, "center_m", "scenario.buildings[]"),
                                      require_number(bj, "radius_m", "scenario.buildings[]"));
            sc.building_r_th_bits.push_back(bj.value("r_th_bits", 0.0));
        }
    }

    sc.r_th_bits = require_number(j, "r_th_bits", "scenario");

    const auto& vel = require(j, "velocity", "scenario");
    if (vel.contains("max_mps"))
        sc.vlim.linear_max_mps = require_number(vel, "max_mps", "scenario.velocity");
    else if (vel.contains("max_mph"))
        sc.vlim.linear_max_mps = require_number(vel, "max_mph", "scenario.velocity") * mph_to_mps;
    else
        throw ParseError("scenario.velocity: missing field 'max_mps' (or 'max_mph')");
    if (vel.contains("max_angular_rad_s"))
        sc.vlim.angular_max_rad_s = require_number(vel, "max_angular_rad_s", "scenario.velocity");

    if (j.contains("outdoor_loss_delta_db"))
        sc.outdoor_loss_delta_db = require_number(j, "outdoor_loss_delta_db", "scenario");

    if (auto it = j.find("solver"); it != j.end()) {
        const auto& s = *it;
        sc.solver.metric_tol = s.value("metric_tol", sc.solver.metric_tol);
        sc.solver.v_tol = s.value("v_tol", sc.solver.v_tol);
        sc.solver.angle_tol = s.value("angle_tol", sc.solver.angle_tol);
        sc.solver.feas_tol = s.value("feas_tol", sc.solver.feas_tol);
        sc.solver.point_tol = s.value("point_tol", sc.solver.point_tol);
        sc.solver.max_iters = s.value("max_iters", sc.solver.max_iters);
        sc.solver.max_inner_iters = s.value("max_inner_iters", sc.solver.max_inner_iters);
        sc.solver.max_sweeps = s.value("max_sweeps", sc.solver.max_sweeps);
        sc.solver.grid_step = s.value("grid_step_m", sc.solver.grid_step);
        sc.solver.dt = s.value("dt_s", sc.solver.dt);
        sc.solver.rel_slack = s.value("rel_slack", sc.solver.rel_slack);
        sc.solver.seed = s.value("seed", sc.solver.seed);
    }

    // Outdoor ground: no penetration for uniform single-circle scenarios;
    // with buildings (or when configured) the outdoor loss sits delta dB
    // below the indoor penetration loss.
    const double lp = penetration_loss(sc.link.carrier_ghz);
    if (std::isfinite(sc.outdoor_loss_delta_db))
        sc.link.outdoor_penetration = lp * std::pow(10.0, -sc.outdoor_loss_delta_db / 10.0);
    else if (!sc.buildings.empty())
        sc.link.outdoor_penetration = lp * 1e-3; // 30 dB below indoor
    else
        sc.link.outdoor_penetration = 1.0;

    validate_scenario(sc);
    return sc;
}

inline nlohmann::json scenario_to_json(const Scenario& sc) {
    nlohmann::json j;
    j["link"] = {{"carrier_ghz", sc.link.carrier_ghz},
                 {"tx_power_dbm", sc.link.tx_power_dbm},
                 {"noise_density_dbm_hz", sc.link.noise_density_dbm_hz},
                 {"bandwidth_hz", sc.link.bandwidth_hz},
                 {"half_beamwidth_rad", sc.link.half_beamwidth_rad},
                 {"altitude_m", sc.link.altitude_m}};
    j["scanning_area"] = {{"center_m", {sc.scanning_area.center.x, sc.scanning_area.center.y}},
                          {"radius_m", sc.scanning_area.radius},
                          {"indoor", sc.area_indoor}};
    if (!sc.buildings.empty()) {
        auto& arr = j["buildings"] = nlohmann::json::array();
        for (std::size_t i = 0; i < sc.buildings.size(); ++i) {
            nlohmann::json bj = {{"center_m", {sc.buildings[i].center.x, sc.buildings[i].center.y}},
                                 {"radius_m", sc.buildings[i].radius}};
            if (sc.building_r_th_bits[i] > 0) bj["r_th_bits"] = sc.building_r_th_bits[i];
            arr.push_back(bj);
        }
    }
    j["r_th_bits"] = sc.r_th_bits;
    j["velocity"] = {{"max_mps", sc.vlim.linear_max_mps}};
    if (std::isfinite(sc.vlim.angular_max_rad_s))
        j["velocity"]["max_angular_rad_s"] = sc.vlim.angular_max_rad_s;
    if (std::isfinite(sc.outdoor_loss_delta_db))
        j["outdoor_loss_delta_db"] = sc.outdoor_loss_delta_db;
    const SolverConfig def;
    nlohmann::json s;
    if (sc.solver.metric_tol != def.metric_tol) s["metric_tol"] = sc.solver.metric_tol;
    if (sc.solver.v_tol != def.v_tol) s["v_tol"] = sc.solver.v_tol;
    if (sc.solver.angle_tol != def.angle_tol) s["angle_tol"] = sc.solver.angle_tol;
    if (sc.solver.feas_tol != def.feas_tol) s["feas_tol"] = sc.solver.feas_tol;
    if (sc.solver.point_tol != def.point_tol) s["point_tol"] = sc.solver.point_tol;
    if (sc.solver.max_iters != def.max_iters) s["max_iters"] = sc.solver.max_iters;
    if (sc.solver.max_inner_iters != def.max_inner_iters)
        s["max_inner_iters"] = sc.solver.max_inner_iters;
    if (sc.solver.max_sweeps != def.max_sweeps) s["max_sweeps"] = sc.solver.max_sweeps;
    if (sc.solver.grid_step != def.grid_step) s["grid_step_m"] = sc.solver.grid_step;
    if (sc.solver.dt != def.dt) s["dt_s"] = sc.solver.dt;
    if (sc.solver.rel_slack != def.rel_slack) s["rel_slack"] = sc.solver.rel_slack;
    if (sc.solver.seed != def.seed) s["seed"] = sc.solver.seed;
    if (!s.empty()) j["solver"] = s;
    return j;
}

inline Scenario load_scenario(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("scenario '" + path + "': " + e.what());
    }
    return scenario_from_json(j);
}

inline std::string scenario_to_string(const Scenario& sc) {
    return scenario_to_json(sc).dump(2) + "\n";
}

inline void save_scenario(const Scenario& sc, const std::string& path) {
    detail::write_file(path, scenario_to_string(sc));
}

// ---- derived planning inputs ----

/// Penetration the single-circle design must survive at its worst corner:
/// indoor loss whenever any ground in the area is indoor, else the outdoor
/// factor.
inline double single_plan_penetration(const Scenario& sc) {
    return (sc.area_indoor || !sc.buildings.empty()) ? penetration_loss(sc.link.carrier_ghz)
                                                     : sc.link.outdoor_penetration;
}

/// Building regions as planner inputs, balanced radii precomputed.
inline std::vector<RegionSpec> make_region_specs(const Scenario& sc) {
    std::vector<RegionSpec> specs;
    specs.reserve(sc.buildings.size());
    for (std::size_t i = 0; i < sc.buildings.size(); ++i) {
        RegionSpec spec;
        spec.circle = sc.buildings[i];
        spec.r_opt_m = solve_balanced_radius(sc.buildings[i], sc.link, sc.solver).radius_m;
        spec.r_th_bits = sc.building_r_th_bits[i] > 0 ? sc.building_r_th_bits[i] : sc.r_th_bits;
        spec.indoor = true;
        specs.push_back(spec);
    }
    return specs;
}

inline CoverageContext make_coverage_context(const Scenario& sc) {
    CoverageContext ctx;
    ctx.scanning_area = sc.scanning_area;
    ctx.area_indoor = sc.area_indoor;
    ctx.buildings = sc.buildings;
    ctx.building_r_th_bits = sc.building_r_th_bits;
    ctx.default_r_th_bits = sc.r_th_bits;
    ctx.params = sc.link;
    ctx.rel_slack = sc.solver.rel_slack;
    return ctx;
}

// ---- plan files ----

inline nlohmann::json mission_to_json(const MissionPlan& plan, const std::string& type,
                                      nlohmann::json diagnostics = {}) {
    nlohmann::json j;
    j["type"] = type;
    auto& legs = j["legs"] = nlohmann::json::array();
    for (const auto& leg : plan.legs) {
        if (const auto* arc = std::get_if<ArcLeg>(&leg)) {
            legs.push_back(
                {{"kind", "arc"},
                 {"center_m", {arc->arc.circle.center.x, arc->arc.circle.center.y}},
                 {"radius_m", arc->arc.circle.radius},
                 {"start_angle_rad", arc->arc.start_angle},
                 {"sweep_rad", arc->arc.sweep_angle},
                 {"direction", arc->arc.direction == ArcDirection::ccw ? "ccw" : "cw"},
                 {"v_rad_s", arc->angular_velocity_rad_s},
                 {"coverage_radius_m", arc->coverage_radius_m},
                 {"region_id", arc->region_id},
                 {"duration_s", arc->duration_s()}});
        } else {
            const auto& line = std::get<LineLeg>(leg);
            legs.push_back({{"kind", "line"},
                            {"from_m", {line.line.from.x, line.line.from.y}},
                            {"to_m", {line.line.to.x, line.line.to.y}},
                            {"speed_mps", line.speed_mps},
                            {"duration_s", line.duration_s()}});
        }
    }
    j["total_time_s"] = plan.total_time_s;
    auto& per = j["per_region"] = nlohmann::json::array();
    for (const auto& r : plan.per_region)
        per.push_back({{"region_id", r.region_id},
                       {"traversal_time_s", r.traversal_time_s},
                       {"v_rad_s", r.velocity_rad_s}});
    if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
    return j;
}

inline MissionPlan mission_from_json(const nlohmann::json& j) {
    using detail::parse_point;
    using detail::require;
    using detail::require_number;
    MissionPlan plan;
    for (const auto& lj : require(j, "legs", "plan")) {
        const std::string kind = require(lj, "kind", "plan.legs[]").get<std::string>();
        if (kind == "arc") {
            ArcLeg leg;
            const Circle c{parse_point(lj, "center_m", "plan.legs[]"),
                           require_number(lj, "radius_m", "plan.legs[]")};
            leg.arc = Arc{c, require_number(lj, "start_angle_rad", "plan.legs[]"),
                          require_number(lj, "sweep_rad", "plan.legs[]"),
                          require(lj, "direction", "plan.legs[]").get<std::string>() == "cw"
                              ? ArcDirection::cw
                              : ArcDirection::ccw};
            leg.angular_velocity_rad_s = require_number(lj, "v_rad_s", "plan.legs[]");
            leg.coverage_radius_m = require_number(lj, "coverage_radius_m", "plan.legs[]");
            leg.region_id = static_cast<int>(require_number(lj, "region_id", "plan.legs[]"));
            plan.legs.push_back(leg);
        } else if (kind == "line") {
            LineLeg leg;
            leg.line = Line{parse_point(lj, "from_m", "plan.legs[]"),
                            parse_point(lj, "to_m", "plan.legs[]")};
            leg.speed_mps = require_number(lj, "speed_mps", "plan.legs[]");
            plan.legs.push_back(leg);
        } else {
            throw ParseError("plan.legs[]: unknown kind '" + kind + "'");
        }
    }
    plan.total_time_s = require_number(j, "total_time_s", "plan");
    if (auto it = j.find("per_region"); it != j.end()) {
        for (const auto& rj : *it)
            plan.per_region.push_back(
                {static_cast<int>(require_number(rj, "region_id", "plan.per_region[]")),
                 require_number(rj, "traversal_time_s", "plan.per_region[]"),
                 require_number(rj, "v_rad_s", "plan.per_region[]")});
    }
    return plan;
}

inline void save_mission(const MissionPlan& plan, const std::string& type,
                         const std::string& path, nlohmann::json diagnostics = {}) {
    detail::write_file(path, mission_to_json(plan, type, std::move(diagnostics)).dump(2) + "\n");
}

inline MissionPlan load_mission(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("plan '" + path + "': " + e.what());
    }
    return mission_from_json(j);
}

// ---- reports and sweeps ----

inline nlohmann::json report_to_json(const CoverageReport& report) {
    nlohmann::json j;
    j["pass"] = report.pass;
    j["grid_step_m"] = report.grid_step_m;
    j["dt_s"] = report.dt_s;
    j["points_checked"] = report.points_checked;
    j["min_delivered_bits"] = report.min_delivered_bits;
    j["min_location_m"] = {report.min_location.x, report.min_location.y};
    j["refinement_delta"] = report.refinement_delta;
    auto& v = j["violations"] = nlohmann::json::array();
    for (const auto& viol : report.violations)
        v.push_back({{"location_m", {viol.location.x, viol.location.y}},
                     {"delivered_bits", viol.delivered_bits}});
    return j;
}

inline void save_report(const CoverageReport& report, const std::string& path) {
    detail::write_file(path, report_to_json(report).dump(2) + "\n");
}

inline std::string sweep_to_csv(const std::vector<SavingsRow>& rows) {
    std::ostringstream out;
    out << "r_th_bits,v_half_rad_s,v_opt_rad_s,t_half_s,t_opt_s,savings_pct,regime\n";
    for (const auto& row : rows) {
        const char* regime = row.regime == SavingsRegime::zero   ? "zero"
                             : row.regime == SavingsRegime::ramp ? "ramp"
                                                                 : "constant";
        out << detail::format_double(row.r_th_bits) << ',' << detail::format_double(row.v_half_rad_s)
            << ',' << detail::format_double(row.v_opt_rad_s) << ','
            << detail::format_double(row.t_half_s) << ',' << detail::format_double(row.t_opt_s)
            << ',' << detail::format_double(row.savings_pct) << ',' << regime << '\n';
    }
    return out.str();
}

inline void save_sweep(const std::vector<SavingsRow>& rows, const std::string& path) {
    detail::write_file(path, sweep_to_csv(rows));
}

} // namespace isac
