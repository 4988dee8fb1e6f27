#pragma once
/**
 * @file coverage_oracle.hpp
 * @brief Brute-force coverage verifier: integrates delivered data over a
 *        ground grid along a mission and reports any point below threshold.
 *
 * Footprint model: while the UAV flies an arc, a ground point is in beam
 * iff it lies inside that arc's coverage circle and its polar angle about
 * the arc center is within half the azimuth beamwidth of the UAV's polar
 * angle (the beam sector the dwell bound of the planner is tight for).
 * The exact center of a circle belongs to every sector, so it is in beam
 * for the whole lap. Straight transit legs deliver nothing.
 *
 * Integration is midpoint-rule inside analytically located beam windows,
 * which keeps the result second-order in the step and stable under
 * refinement.
 */

#include <algorithm>
#include <cmath>
#include <vector>

#include "isac/errors.hpp"
#include "isac/geometry.hpp"
#include "isac/linkbudget.hpp"
#include "isac/multi_region.hpp"
#include "isac/solver_config.hpp"

namespace isac {

struct ConnectionWindow {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
};

struct Violation {
    Point2D location;
    double delivered_bits = 0.0;
};

struct CoverageReport {
    double grid_step_m = 0.0;
    double dt_s = 0.0; ///< coarsest integration step actually used
    double min_delivered_bits = 0.0;
    Point2D min_location;
    std::vector<Violation> violations; ///< sorted by (x, y)
    bool pass = false;
    double refinement_delta = 0.0; ///< relative change of the minimum on halving dt
    int points_checked = 0;
};

/// Ground truth the verifier needs about the scenario.
struct CoverageContext {
    Circle scanning_area;
    bool area_indoor = false; ///< uniform penetration over the whole area
    std::vector<Circle> buildings;
    std::vector<double> building_r_th_bits; ///< per building; empty -> default everywhere
    double default_r_th_bits = 0.0;
    LinkParams params;
    double rel_slack = 0.01;
};

namespace detail {

/// Beam windows of one arc leg for one ground point, in leg-local time.
inline void beam_windows(const ArcLeg& leg, const Point2D& point, double half_beamwidth_rad,
                         std::vector<ConnectionWindow>& out) {
    const double rho = point.distance_to(leg.arc.circle.center);
    if (rho > leg.coverage_radius_m * (1.0 + 1e-12)) return;
    const double dur = leg.duration_s();
    if (rho < 1e-9) { // sector apex: in beam for the whole leg
        out.push_back({0.0, dur});
        return;
    }
    const double v = leg.angular_velocity_rad_s;
    const double theta = leg.arc.circle.angle_of(point);
    const double dir_sign = leg.arc.direction == ArcDirection::ccw ? 1.0 : -1.0;
    // sweep offset at which the UAV's polar angle passes over the point
    const double crossing = wrap_angle(dir_sign * (theta - leg.arc.start_angle));
    const double half_window = 0.5 * half_beamwidth_rad / v;
    const double period = two_pi / v;
    for (int k = -1; k <= 1; ++k) {
        const double center_t = crossing / v + k * period;
        const double a = std::max(center_t - half_window, 0.0);
        const double b = std::min(center_t + half_window, dur);
        if (b - a > 1e-12) out.push_back({a, b});
    }
}

/// Midpoint-rule integral of spectral efficiency over one window, bits/Hz.
inline double integrate_window(const ArcLeg& leg, const Point2D& point, double pen,
                               const LinkParams& params, const ConnectionWindow& w,
                               double max_step) {
    const double len = w.t_end_s - w.t_start_s;
    const int n = std::max(1, static_cast<int>(std::ceil(len / max_step)));
    const double h = len / n;
    const double dir_sign = leg.arc.direction == ArcDirection::ccw ? 1.0 : -1.0;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = w.t_start_s + (i + 0.5) * h;
        const Point2D uav =
            leg.arc.circle.point_at(leg.arc.start_angle +
                                    dir_sign * leg.angular_velocity_rad_s * t);
        acc += spectral_efficiency_at(point.distance_to(uav), pen, params) * h;
    }
    return acc;
}

inline double leg_step(const ArcLeg& leg, double requested_dt, double half_beamwidth_rad) {
    const double auto_dt = half_beamwidth_rad / 400.0 / leg.angular_velocity_rad_s;
    return requested_dt > 0.0 ? requested_dt : auto_dt;
}

} // namespace detail

/**
 * Total in-beam time and window count for one ground point along a mission,
 * measured at resolution dt (dt <= 0 selects the automatic step).
 */
inline std::pair<double, int> dwell_time(const Point2D& point, const MissionPlan& plan,
                                         double half_beamwidth_rad, double dt) {
    double total = 0.0;
    int windows = 0;
    double t0 = 0.0;
    for (const auto& leg : plan.legs) {
        if (const auto* arc = std::get_if<ArcLeg>(&leg)) {
            std::vector<ConnectionWindow> wins;
            detail::beam_windows(*arc, point, half_beamwidth_rad, wins);
            const double step = detail::leg_step(*arc, dt, half_beamwidth_rad);
            for (const auto& w : wins) {
                total += std::floor((w.t_end_s - w.t_start_s) / step) * step;
                ++windows;
            }
        }
        t0 += leg_duration(leg);
    }
    return {total, windows};
}

/**
 * Verify that a mission delivers each grid point's data threshold.
 *
 * Every lattice point inside the scanning area is simulated along the
 * mission; a point passes when its accumulated data is at least
 * r_th * (1 - rel_slack). Recorded connection windows are checked for
 * ordering and containment in [0, T], and every leg must keep the UAV
 * moving. With check_refinement the verification is repeated at half the
 * step and must agree within 1%, else ResolutionTooCoarse is thrown.
 *
 * grid_step <= 0 selects area radius / 100; dt <= 0 selects the step at
 * which each arc sweeps 1/400 of the beamwidth.
 */
inline CoverageReport verify(const MissionPlan& plan, const CoverageContext& ctx,
                             double grid_step = 0.0, double dt = 0.0,
                             bool check_refinement = true) {
    ctx.params.validate();
    if (!(ctx.default_r_th_bits > 0))
        throw ValidationError("verify: default r_th must be > 0");
    for (const auto& leg : plan.legs) {
        const bool moving = std::visit(
            [](const auto& l) {
                if constexpr (std::is_same_v<std::decay_t<decltype(l)>, ArcLeg>)
                    return l.angular_velocity_rad_s > 0.0;
                else
                    return l.speed_mps > 0.0 || l.line.length() == 0.0;
            },
            leg);
        if (!moving) throw ValidationError("verify: mission has a zero-speed leg");
    }

    const double step = grid_step > 0.0 ? grid_step : ctx.scanning_area.radius / 100.0;
    const double phi_a = ctx.params.half_beamwidth_rad;
    const double total_duration = [&] {
        double t = 0.0;
        for (const auto& leg : plan.legs) t += leg_duration(leg);
        return t;
    }();

    auto point_r_th = [&](const Point2D& p, bool& indoor) -> double {
        indoor = ctx.area_indoor;
        double r_th = ctx.default_r_th_bits;
        for (std::size_t b = 0; b < ctx.buildings.size(); ++b) {
            if (p.distance_to(ctx.buildings[b].center) <= ctx.buildings[b].radius) {
                indoor = true;
                if (b < ctx.building_r_th_bits.size() && ctx.building_r_th_bits[b] > 0)
                    r_th = ctx.building_r_th_bits[b];
                break;
            }
        }
        return r_th;
    };

    auto delivered_at = [&](const Point2D& p, bool indoor, double dt_scale,
                            std::vector<ConnectionWindow>* windows_out) -> double {
        const double pen = penetration_factor(indoor, ctx.params);
        double bits_per_hz = 0.0;
        double t0 = 0.0;
        for (const auto& leg : plan.legs) {
            if (const auto* arc = std::get_if<ArcLeg>(&leg)) {
                std::vector<ConnectionWindow> wins;
                detail::beam_windows(*arc, p, phi_a, wins);
                const double leg_dt = detail::leg_step(*arc, dt, phi_a) * dt_scale;
                for (const auto& w : wins) {
                    bits_per_hz += detail::integrate_window(*arc, p, pen, ctx.params, w, leg_dt);
                    if (windows_out) {
                        const ConnectionWindow abs_w{t0 + w.t_start_s, t0 + w.t_end_s};
                        if (abs_w.t_start_s < -1e-9 || abs_w.t_end_s < abs_w.t_start_s ||
                            abs_w.t_end_s > total_duration * (1.0 + 1e-9))
                            throw Error("verify: connection window outside mission duration");
                        windows_out->push_back(abs_w);
                    }
                }
            }
            t0 += leg_duration(leg);
        }
        return bits_per_hz * ctx.params.bandwidth_hz;
    };

    CoverageReport report;
    report.grid_step_m = step;
    report.dt_s = 0.0;
    for (const auto& leg : plan.legs)
        if (const auto* arc = std::get_if<ArcLeg>(&leg))
            report.dt_s = std::max(report.dt_s, detail::leg_step(*arc, dt, phi_a));

    const int m = static_cast<int>(std::floor(ctx.scanning_area.radius / step));
    double min_delivered = std::numeric_limits<double>::infinity();
    double min_delivered_half = std::numeric_limits<double>::infinity();
    Point2D min_loc;
    std::vector<ConnectionWindow> windows;
    for (int i = -m; i <= m; ++i) {
        for (int j = -m; j <= m; ++j) {
            const Point2D p{ctx.scanning_area.center.x + i * step,
                            ctx.scanning_area.center.y + j * step};
            if (p.distance_to(ctx.scanning_area.center) > ctx.scanning_area.radius) continue;
            ++report.points_checked;
            bool indoor = false;
            const double r_th = point_r_th(p, indoor);
            windows.clear();
            const double got = delivered_at(p, indoor, 1.0, &windows);
            if (got < min_delivered) {
                min_delivered = got;
                min_loc = p;
            }
            if (got < r_th * (1.0 - ctx.rel_slack)) report.violations.push_back({p, got});
            if (check_refinement) {
                const double got_half = delivered_at(p, indoor, 0.5, nullptr);
                min_delivered_half = std::min(min_delivered_half, got_half);
            }
        }
    }
    if (report.points_checked == 0) throw ValidationError("verify: empty evaluation grid");

    std::sort(report.violations.begin(), report.violations.end(), [](const auto& a, const auto& b) {
        return a.location.x != b.location.x ? a.location.x < b.location.x
                                            : a.location.y < b.location.y;
    });
    report.min_delivered_bits = min_delivered;
    report.min_location = min_loc;
    report.pass = report.violations.empty();
    if (check_refinement && min_delivered > 0.0) {
        report.refinement_delta = std::abs(min_delivered_half - min_delivered) / min_delivered;
        if (report.refinement_delta > 0.01)
            throw ResolutionTooCoarse("verify: minimum moved " +
                                      std::to_string(report.refinement_delta * 100.0) +
                                      "% on halving dt");
    }
    return report;
}

} // namespace isac
