#pragma once
/**
 * @file multi_region.hpp
 * @brief Two-phase mission over isolated building regions: a big circle for
 *        the outdoor ground, then a tour of per-region circles joined by
 *        straight connectors whose attachment points are refined by
 *        coordinate descent.
 *
 * Consecutive circles are joined by straight segments, and each circle is
 * entered and left at a single exit point (splitting them can only lengthen
 * the tour). For one region with its neighbors fixed, the best exit point
 * lies on the smaller arc between the boundary points nearest to each
 * neighbor; along that arc the connector sum is unimodal, so its minimizer
 * is found by bisection on the derivative sign. The radius is then grown
 * toward the region's balanced radius as far as the connector-sum budget
 * allows (their sum is convex in the radius).
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "isac/errors.hpp"
#include "isac/geometry.hpp"
#include "isac/linkbudget.hpp"
#include "isac/single_circle.hpp"
#include "isac/solver_config.hpp"

namespace isac {

/// One building region to serve in phase two.
struct RegionSpec {
    Circle circle;          ///< coverage circle of the region
    double r_opt_m = 0.0;   ///< its balanced trajectory radius
    double r_th_bits = 0.0; ///< data threshold for points inside
    bool indoor = true;     ///< penetration applies to its ground points

    void validate() const {
        if (r_opt_m < 0.5 * circle.radius - 1e-9 || r_opt_m > circle.radius + 1e-9)
            throw ValidationError("RegionSpec: r_opt must lie in [R/2, R]");
        if (!(r_th_bits > 0)) throw ValidationError("RegionSpec: r_th must be > 0");
    }
};

/// Exit points and radii of the tour, in visiting order.
struct ConnectState {
    std::vector<Point2D> exit_points;
    std::vector<double> radii;

    double connector_sum() const {
        double total = 0.0;
        for (std::size_t i = 1; i < exit_points.size(); ++i)
            total += exit_points[i].distance_to(exit_points[i - 1]);
        return total;
    }
};

/**
 * Visiting order over region centers minimizing the open-path length.
 * Up to nine centers the optimum is computed exactly (subset DP); larger
 * instances use nearest-neighbor construction from every start refined by
 * 2-opt until no move improves.
 */
inline std::vector<int> order_regions(std::span<const Point2D> centers, const SolverConfig&) {
    const int n = static_cast<int>(centers.size());
    if (n == 0) return {};
    if (n == 1) return {0};

    std::vector<double> dist(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist[i * n + j] = centers[i].distance_to(centers[j]);

    auto path_length = [&](const std::vector<int>& p) {
        double total = 0.0;
        for (std::size_t i = 1; i < p.size(); ++i) total += dist[p[i - 1] * n + p[i]];
        return total;
    };

    if (n <= 9) {
        // exact open path: dp[mask][j] = shortest path visiting mask, ending at j
        const int full = 1 << n;
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> dp(static_cast<std::size_t>(full) * n, inf);
        std::vector<int> parent(static_cast<std::size_t>(full) * n, -1);
        for (int j = 0; j < n; ++j) dp[(std::size_t)(1 << j) * n + j] = 0.0;
        for (int mask = 1; mask < full; ++mask) {
            for (int j = 0; j < n; ++j) {
                if (!(mask & (1 << j))) continue;
                const double cur = dp[(std::size_t)mask * n + j];
                if (cur == inf) continue;
                for (int k = 0; k < n; ++k) {
                    if (mask & (1 << k)) continue;
                    const int next_mask = mask | (1 << k);
                    const double cand = cur + dist[j * n + k];
                    if (cand < dp[(std::size_t)next_mask * n + k]) {
                        dp[(std::size_t)next_mask * n + k] = cand;
                        parent[(std::size_t)next_mask * n + k] = j;
                    }
                }
            }
        }
        int best_end = 0;
        for (int j = 1; j < n; ++j)
            if (dp[(std::size_t)(full - 1) * n + j] < dp[(std::size_t)(full - 1) * n + best_end])
                best_end = j;
        std::vector<int> order;
        int mask = full - 1, j = best_end;
        while (j >= 0) {
            order.push_back(j);
            const int pj = parent[(std::size_t)mask * n + j];
            mask &= ~(1 << j);
            j = pj;
        }
        std::reverse(order.begin(), order.end());
        return order;
    }

    std::vector<int> best;
    double best_len = std::numeric_limits<double>::infinity();
    for (int start = 0; start < n; ++start) {
        std::vector<int> path{start};
        std::vector<bool> used(n, false);
        used[start] = true;
        while (static_cast<int>(path.size()) < n) {
            const int at = path.back();
            int pick = -1;
            double best_d = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j)
                if (!used[j] && dist[at * n + j] < best_d) {
                    best_d = dist[at * n + j];
                    pick = j;
                }
            path.push_back(pick);
            used[pick] = true;
        }
        // 2-opt: reverse path[i..k] while any move shortens the open path
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < n - 1 && !improved; ++i) {
                for (int k = i + 1; k < n && !improved; ++k) {
                    const double left_old = i > 0 ? dist[path[i - 1] * n + path[i]] : 0.0;
                    const double right_old = k < n - 1 ? dist[path[k] * n + path[k + 1]] : 0.0;
                    const double left_new = i > 0 ? dist[path[i - 1] * n + path[k]] : 0.0;
                    const double right_new = k < n - 1 ? dist[path[i] * n + path[k + 1]] : 0.0;
                    if (left_new + right_new < left_old + right_old - 1e-12) {
                        std::reverse(path.begin() + i, path.begin() + k + 1);
                        improved = true;
                    }
                }
            }
        }
        const double len = path_length(path);
        if (len < best_len) {
            best_len = len;
            best = path;
        }
    }
    return best;
}

/// Connector length sum for an exit point q between two fixed neighbors.
inline double connector_objective(const Point2D& q, const Point2D& prev, const Point2D& next) {
    return prev.distance_to(q) + next.distance_to(q);
}

/**
 * Angle of the exit point minimizing the connector sum on a fixed-radius
 * circle, restricted to the smaller arc between the boundary points nearest
 * to prev and next. Bisection on the sign of the tangential derivative of
 * the (unimodal) objective.
 *
 * Throws DegenerateInput when prev or next lies inside the circle.
 */
inline double optimize_angle(const Circle& circle, const Point2D& prev, const Point2D& next,
                             const SolverConfig& cfg) {
    if (prev.distance_to(circle.center) <= circle.radius ||
        next.distance_to(circle.center) <= circle.radius)
        throw DegenerateInput("optimize_angle: neighbor inside the circle");

    const double a = circle.angle_of(nearest_point_on_circle(circle, prev));
    const double b = circle.angle_of(nearest_point_on_circle(circle, next));
    const double ccw = wrap_angle(b - a);
    const double sweep = ccw <= std::numbers::pi ? ccw : ccw - two_pi; // signed, |sweep| <= pi
    if (std::abs(sweep) < 1e-15) return a;

    auto slope = [&](double s) {
        const double phi = a + s * sweep;
        const Point2D q = circle.point_at(phi);
        const Point2D tangent{-std::sin(phi), std::cos(phi)};
        const Point2D to_prev = q - prev;
        const Point2D to_next = q - next;
        const double g =
            tangent.dot(to_prev) / to_prev.norm() + tangent.dot(to_next) / to_next.norm();
        return sweep * g; // derivative with respect to the arc parameter s
    };

    double lo = 0.0, hi = 1.0;
    if (slope(lo) >= 0.0) return wrap_angle(a);
    if (slope(hi) <= 0.0) return wrap_angle(a + sweep);
    for (int i = 0; i < cfg.max_iters && std::abs(sweep) * (hi - lo) > cfg.angle_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < 0.0 ? lo : hi) = mid;
    }
    return wrap_angle(a + 0.5 * (lo + hi) * sweep);
}

/**
 * Largest radius in [r_lo, r_hi] whose exit point at phi_star keeps the
 * connector sum within zeta * (1 + feas_tol). The connector sum is convex
 * in the radius, so the feasible set is an interval containing r_lo and the
 * upper boundary is found by bisection.
 */
inline double optimize_radius(const Point2D& center, double phi_star, double zeta, double r_lo,
                              double r_hi, const Point2D& prev, const Point2D& next,
                              const SolverConfig& cfg) {
    const Point2D dir{std::cos(phi_star), std::sin(phi_star)};
    auto f = [&](double r) { return connector_objective(center + r * dir, prev, next); };
    const double budget = zeta * (1.0 + cfg.feas_tol);
    if (f(r_hi) <= budget) return r_hi;
    if (f(r_lo) > budget) return r_lo; // only by rounding; the lower end defined zeta
    double lo = r_lo, hi = r_hi;
    for (int i = 0; i < cfg.max_iters && (hi - lo) > cfg.point_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= budget ? lo : hi) = mid;
    }
    return lo;
}

/// Exit point and radius of one region after alternating refinement.
struct ExitPointResult {
    Point2D exit_point;
    double radius = 0.0;
};

/**
 * Alternate the angle and radius searches for one region, holding its
 * neighbors fixed. circle_time(r) maps a trajectory radius to the lap
 * duration; the step is kept only when it does not raise the local time
 * (connector transit plus lap), and that local time is asserted
 * non-increasing across iterations.
 */
inline ExitPointResult refine_exit_point(const Point2D& center, const Point2D& current_exit,
                                         double r_cur, double r_opt, const Point2D& prev,
                                         const Point2D& next,
                                         const std::function<double(double)>& circle_time,
                                         double connector_speed, const SolverConfig& cfg) {
    auto local_time = [&](const Point2D& q, double r) {
        return connector_objective(q, prev, next) / connector_speed + circle_time(r);
    };
    Point2D q = current_exit;
    double r = r_cur;
    double t = local_time(q, r);
    for (int j = 0; j < cfg.max_inner_iters; ++j) {
        const double phi = optimize_angle(Circle{center, r}, prev, next, cfg);
        const Point2D q_angle = Circle{center, r}.point_at(phi);
        const double zeta = connector_objective(q_angle, prev, next);

        Point2D q_next = q_angle;
        double r_next = r;
        if (r_opt > r + 1e-15) {
            const double r_cand = optimize_radius(center, phi, zeta, r, r_opt, prev, next, cfg);
            const Point2D q_cand = Circle{center, r_cand}.point_at(phi);
            if (local_time(q_cand, r_cand) <= local_time(q_angle, r)) {
                q_next = q_cand;
                r_next = r_cand;
            }
        }
        const double t_next = local_time(q_next, r_next);
        if (t_next > t * (1.0 + 1e-9))
            throw MonotonicityViolation("refine_exit_point: local time increased");
        const double moved = q_next.distance_to(q);
        q = q_next;
        r = r_next;
        t = t_next;
        if (moved <= cfg.point_tol) break;
    }
    return ExitPointResult{q, r};
}

/// Output of the coordinate-descent sweep, with its objective trace.
struct ConnectResult {
    ConnectState state;
    std::vector<double> objective_trace; ///< total time after init and each update
};

/**
 * Coordinate descent over exit points: sweep the regions in visiting order,
 * refining one exit point at a time with the others fixed. The total time
 * (connector transits plus laps) is asserted non-increasing after every
 * update; the sweep stops early once no exit point moves beyond point_tol.
 *
 * Regions must be passed in visiting order.
 */
inline ConnectResult optimize_connections(std::span<const RegionSpec> regions,
                                          const LinkParams& params, const VelocityLimit& vlim,
                                          const SolverConfig& cfg) {
    const int n = static_cast<int>(regions.size());
    ConnectResult result;
    if (n == 0) return result;

    auto circle_time = [&](int i, double r) {
        const double pen = penetration_factor(regions[i].indoor, params);
        return two_pi /
               solve_velocity(r, regions[i].circle, regions[i].r_th_bits, pen, params, vlim, cfg);
    };

    ConnectState state;
    state.radii.resize(n);
    state.exit_points.resize(n);
    for (int i = 0; i < n; ++i) state.radii[i] = 0.5 * regions[i].circle.radius;
    if (n == 1) {
        state.exit_points[0] = Circle{regions[0].circle.center, state.radii[0]}.point_at(0.0);
    } else {
        state.exit_points[0] = nearest_point_on_circle(
            Circle{regions[0].circle.center, state.radii[0]}, regions[1].circle.center);
        for (int i = 1; i < n; ++i)
            state.exit_points[i] = nearest_point_on_circle(
                Circle{regions[i].circle.center, state.radii[i]}, state.exit_points[i - 1]);
    }

    auto total_time = [&]() {
        double t = state.connector_sum() / vlim.linear_max_mps;
        for (int i = 0; i < n; ++i) t += circle_time(i, state.radii[i]);
        return t;
    };

    double objective = total_time();
    result.objective_trace.push_back(objective);
    if (n == 1) {
        result.state = state;
        return result;
    }

    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            const Point2D prev = i == 0 ? state.exit_points[1] : state.exit_points[i - 1];
            const Point2D next = i == n - 1 ? state.exit_points[n - 2] : state.exit_points[i + 1];
            const ExitPointResult res = refine_exit_point(
                regions[i].circle.center, state.exit_points[i], state.radii[i],
                regions[i].r_opt_m, prev, next, [&](double r) { return circle_time(i, r); },
                vlim.linear_max_mps, cfg);
            moved = std::max(moved, res.exit_point.distance_to(state.exit_points[i]));
            state.exit_points[i] = res.exit_point;
            state.radii[i] = res.radius;
            const double updated = total_time();
            if (updated > objective * (1.0 + 1e-9))
                throw MonotonicityViolation("optimize_connections: total time increased");
            objective = updated;
            result.objective_trace.push_back(objective);
        }
        if (moved <= cfg.point_tol) break;
    }
    result.state = state;
    return result;
}

/// Circular lap flown at constant angular velocity, serving the ground
/// inside coverage_radius of its center.
struct ArcLeg {
    Arc arc;
    double angular_velocity_rad_s = 0.0;
    double coverage_radius_m = 0.0;
    int region_id = -1; ///< -1 marks the scanning-area lap

    double duration_s() const { return arc.sweep_angle / angular_velocity_rad_s; }
};

/// Straight transit leg; no delivery requirement applies on it.
struct LineLeg {
    Line line;
    double speed_mps = 0.0;

    double duration_s() const { return line.length() / speed_mps; }
};

using MissionLeg = std::variant<ArcLeg, LineLeg>;

inline double leg_duration(const MissionLeg& leg) {
    return std::visit([](const auto& l) { return l.duration_s(); }, leg);
}

struct RegionTime {
    int region_id = -1;
    double traversal_time_s = 0.0;
    double velocity_rad_s = 0.0;
};

/// Complete mission: contiguous legs plus per-region timing.
struct MissionPlan {
    std::vector<MissionLeg> legs;
    double total_time_s = 0.0;
    std::vector<RegionTime> per_region;
};

/// Geometry-only view of a mission, for length and contiguity checks.
inline std::vector<PathSegment> mission_path(const MissionPlan& plan) {
    std::vector<PathSegment> path;
    path.reserve(plan.legs.size());
    for (const auto& leg : plan.legs)
        std::visit(
            [&](const auto& l) {
                if constexpr (std::is_same_v<std::decay_t<decltype(l)>, ArcLeg>)
                    path.emplace_back(l.arc);
                else
                    path.emplace_back(l.line);
            },
            leg);
    return path;
}

/// Wrap a single-circle design as a one-leg mission over its area.
inline MissionPlan to_mission(const SingleCirclePlan& plan, const Circle& area) {
    MissionPlan mission;
    ArcLeg leg;
    leg.arc = Arc::full_circle(Circle{area.center, plan.r_u_m}, 0.0);
    leg.angular_velocity_rad_s = plan.angular_velocity_rad_s;
    leg.coverage_radius_m = area.radius;
    leg.region_id = -1;
    mission.legs.push_back(leg);
    mission.total_time_s = leg.duration_s();
    mission.per_region.push_back({-1, leg.duration_s(), plan.angular_velocity_rad_s});
    return mission;
}

/**
 * Stitch the two phases into one contiguous mission: the big lap anchored
 * where it leaves toward the first region, a transit to the first exit
 * point, then each region's full lap anchored at its exit point with a
 * straight connector to the next. Connectors fly at the linear speed limit.
 *
 * Regions and state must be in visiting order.
 */
inline MissionPlan assemble_mission(const SingleCirclePlan& big, const Circle& scanning_area,
                                    std::span<const RegionSpec> regions,
                                    std::span<const int> region_ids, const ConnectState& state,
                                    const LinkParams& params, const VelocityLimit& vlim,
                                    const SolverConfig& cfg) {
    const int n = static_cast<int>(regions.size());
    if (n == 0) throw ValidationError("assemble_mission: no regions");

    const Circle big_circle{scanning_area.center, big.r_u_m};
    double leave_angle = 0.0;
    if (regions[0].circle.center.distance_to(scanning_area.center) > 1e-12)
        leave_angle = big_circle.angle_of(
            nearest_point_on_circle(big_circle, regions[0].circle.center));

    MissionPlan mission;
    ArcLeg big_leg;
    big_leg.arc = Arc::full_circle(big_circle, leave_angle);
    big_leg.angular_velocity_rad_s = big.angular_velocity_rad_s;
    big_leg.coverage_radius_m = scanning_area.radius;
    big_leg.region_id = -1;
    mission.legs.push_back(big_leg);
    mission.per_region.push_back({-1, big_leg.duration_s(), big.angular_velocity_rad_s});

    Point2D at = big_circle.point_at(leave_angle);
    for (int i = 0; i < n; ++i) {
        mission.legs.push_back(LineLeg{Line{at, state.exit_points[i]}, vlim.linear_max_mps});
        const double pen = penetration_factor(regions[i].indoor, params);
        const double v = solve_velocity(state.radii[i], regions[i].circle, regions[i].r_th_bits,
                                        pen, params, vlim, cfg);
        const Circle traj{regions[i].circle.center, state.radii[i]};
        ArcLeg leg;
        leg.arc = Arc::full_circle(traj, traj.angle_of(state.exit_points[i]));
        leg.angular_velocity_rad_s = v;
        leg.coverage_radius_m = regions[i].circle.radius;
        leg.region_id = region_ids[i];
        mission.legs.push_back(leg);
        mission.per_region.push_back({region_ids[i], leg.duration_s(), v});
        at = state.exit_points[i];
    }

    mission.total_time_s = 0.0;
    for (const auto& leg : mission.legs) mission.total_time_s += leg_duration(leg);
    return mission;
}

/// Everything the multi-region pipeline produced, for reporting.
struct MultiPlanResult {
    MissionPlan mission;
    SingleCirclePlan big;
    std::vector<int> order;
    ConnectState state;
    std::vector<double> objective_trace;
};

/**
 * End-to-end multi-region pipeline: big-circle design for the outdoor
 * ground, visiting order over region centers, exit-point descent, and
 * mission assembly.
 */
inline MultiPlanResult plan_multi(const Circle& scanning_area, double outdoor_r_th_bits,
                                  std::span<const RegionSpec> regions, const LinkParams& params,
                                  const VelocityLimit& vlim, const SolverConfig& cfg) {
    if (regions.empty()) throw ValidationError("plan_multi: scenario has no building regions");
    for (const auto& region : regions) region.validate();

    MultiPlanResult result;
    result.big = plan_single(scanning_area, outdoor_r_th_bits, params.outdoor_penetration, params,
                             vlim, cfg);

    std::vector<Point2D> centers;
    centers.reserve(regions.size());
    for (const auto& r : regions) centers.push_back(r.circle.center);
    result.order = order_regions(centers, cfg);

    std::vector<RegionSpec> ordered;
    ordered.reserve(regions.size());
    for (int idx : result.order) ordered.push_back(regions[idx]);

    ConnectResult connect = optimize_connections(ordered, params, vlim, cfg);
    result.state = std::move(connect.state);
    result.objective_trace = std::move(connect.objective_trace);
    result.mission = assemble_mission(result.big, scanning_area, ordered, result.order,
                                      result.state, params, vlim, cfg);
    return result;
}

} // namespace isac
