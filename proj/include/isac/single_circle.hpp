#pragma once
/**
 * @file single_circle.hpp
 * @brief Single circular trajectory design: loss-balancing radius, largest
 *        feasible angular velocity, and the completion-time savings profile
 *        against the half-radius baseline.
 *
 * The planner works in two stages. First a bisection finds the trajectory
 * radius at which the loss metric at the far footprint corner equals the
 * metric at the area center; flying there maximizes the worst-point SNR.
 * Second, the largest angular velocity that still delivers the data
 * threshold to the worst corner during its beam dwell is computed, both in
 * closed form and by bisection, and clamped by the velocity limit.
 */

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "isac/errors.hpp"
#include "isac/geometry.hpp"
#include "isac/linkbudget.hpp"
#include "isac/solver_config.hpp"

namespace isac {

/// UAV speed limits. The angular cap at radius r is linear_max / r; an
/// optional shared angular ceiling applies at every radius.
struct VelocityLimit {
    double linear_max_mps = std::numeric_limits<double>::infinity();
    double angular_max_rad_s = std::numeric_limits<double>::infinity();

    double angular_cap(double radius_m) const {
        return std::min(angular_max_rad_s, linear_max_mps / radius_m);
    }
    void validate() const {
        if (!(linear_max_mps > 0) || !(angular_max_rad_s > 0))
            throw ValidationError("VelocityLimit: limits must be positive");
    }
};

/// Result of the loss-balance search. balanced is false when the corner
/// metric never meets the center metric on [R/2, R] (very wide beams); the
/// returned radius is then the endpoint with the smaller worst metric.
struct BalancedRadius {
    double radius_m = 0.0;
    bool balanced = true;
};

/**
 * Find the trajectory radius in [R/2, R] where the worst-corner loss metric
 * equals the center loss metric, by bisection on the sign of their
 * difference (the difference is strictly decreasing in r_u).
 */
inline BalancedRadius solve_balanced_radius(const Circle& region, const LinkParams& params,
                                            const SolverConfig& cfg) {
    auto diff = [&](double r) {
        return worst_point_loss_metric(r, MetricTarget::worst_corner, region, params).value -
               worst_point_loss_metric(r, MetricTarget::center, region, params).value;
    };
    double lo = 0.5 * region.radius;
    double hi = region.radius;
    const double d_hi = diff(hi);
    if (d_hi > 0.0) {
        // no crossing: both endpoints are corner-dominated, pick the smaller corner metric
        const double corner_lo =
            worst_point_loss_metric(lo, MetricTarget::worst_corner, region, params).value;
        const double corner_hi =
            worst_point_loss_metric(hi, MetricTarget::worst_corner, region, params).value;
        return BalancedRadius{corner_lo <= corner_hi ? lo : hi, false};
    }
    for (int i = 0; i < cfg.max_iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double d = diff(mid);
        const double center =
            worst_point_loss_metric(mid, MetricTarget::center, region, params).value;
        if (std::abs(d) <= cfg.metric_tol * center) return BalancedRadius{mid, true};
        (d > 0.0 ? lo : hi) = mid;
    }
    return BalancedRadius{0.5 * (lo + hi), true};
}

/// Spectral efficiency at the worst footprint corner for a given trajectory
/// radius and penetration factor.
inline double worst_corner_se(double r_u, const Circle& region, double penetration,
                              const LinkParams& params) {
    const double d = worst_corner_distance(r_u, region, params.half_beamwidth_rad);
    return spectral_efficiency_at(d, penetration, params);
}

/**
 * Largest angular velocity delivering r_th_bits to the worst corner during
 * its dwell, clamped by the velocity limit. Closed form: the dwell per pass
 * is half_beamwidth / v, so v = half_beamwidth * bandwidth * SE / r_th.
 *
 * Throws InfeasibleThreshold if the worst corner sees zero rate.
 */
inline double solve_velocity(double r_u, const Circle& region, double r_th_bits,
                             double penetration, const LinkParams& params,
                             const VelocityLimit& vlim, const SolverConfig&) {
    if (!(r_th_bits > 0)) throw OutOfRange("solve_velocity: r_th must be > 0");
    const double se = worst_corner_se(r_u, region, penetration, params);
    if (!(se > 0.0) || !std::isfinite(se))
        throw InfeasibleThreshold("solve_velocity: worst corner has zero rate");
    const double v_data = params.half_beamwidth_rad * params.bandwidth_hz * se / r_th_bits;
    return std::min(v_data, vlim.angular_cap(r_u));
}

/**
 * Same velocity via bisection on the active data constraint
 * (half_beamwidth / v) * bandwidth * SE = r_th, retained because it
 * generalizes to rate models without a closed form. Agrees with
 * solve_velocity to cfg.v_tol relative.
 */
inline double solve_velocity_bisect(double r_u, const Circle& region, double r_th_bits,
                                    double penetration, const LinkParams& params,
                                    const VelocityLimit& vlim, const SolverConfig& cfg) {
    if (!(r_th_bits > 0)) throw OutOfRange("solve_velocity_bisect: r_th must be > 0");
    const double se = worst_corner_se(r_u, region, penetration, params);
    if (!(se > 0.0) || !std::isfinite(se))
        throw InfeasibleThreshold("solve_velocity_bisect: worst corner has zero rate");
    auto delivered = [&](double v) {
        return params.half_beamwidth_rad / v * params.bandwidth_hz * se;
    };
    const double cap = vlim.angular_cap(r_u);
    if (std::isfinite(cap) && delivered(cap) >= r_th_bits) return cap; // clamped
    double lo = 1e-9, hi = cap;
    if (!std::isfinite(hi)) { // grow an unclamped bracket above the root
        hi = 1.0;
        while (delivered(hi) >= r_th_bits && hi < 1e15) hi *= 2.0;
    }
    for (int i = 0; i < cfg.max_iters && (hi - lo) > 0.5 * cfg.v_tol * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (delivered(mid) >= r_th_bits ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// One optimized circular trajectory.
struct SingleCirclePlan {
    double r_u_m = 0.0;               ///< trajectory radius
    double angular_velocity_rad_s = 0.0;
    double completion_time_s = 0.0;   ///< 2 pi / v
    Point2D worst_corner;             ///< canonical frame, UAV anchored at angle 0
    double data_at_worst_bits = 0.0;  ///< dwell bound at the worst corner
    bool clamped = false;             ///< velocity hit the cap
    bool balanced = true;             ///< loss balance found inside (R/2, R]
};

/**
 * Full single-circle design: balance the radius, then pick the velocity.
 * The delivered-data bound at the worst corner equals r_th exactly when the
 * velocity is unclamped, and exceeds it when clamped.
 */
inline SingleCirclePlan plan_single(const Circle& region, double r_th_bits, double penetration,
                                    const LinkParams& params, const VelocityLimit& vlim,
                                    const SolverConfig& cfg) {
    const BalancedRadius br = solve_balanced_radius(region, params, cfg);
    const double v = solve_velocity(br.radius_m, region, r_th_bits, penetration, params, vlim, cfg);
    const double se = worst_corner_se(br.radius_m, region, penetration, params);
    SingleCirclePlan plan;
    plan.r_u_m = br.radius_m;
    plan.angular_velocity_rad_s = v;
    plan.completion_time_s = two_pi / v;
    plan.worst_corner = worst_corner_point(region, params.half_beamwidth_rad);
    plan.data_at_worst_bits = params.half_beamwidth_rad / v * params.bandwidth_hz * se;
    plan.clamped = v >= vlim.angular_cap(br.radius_m) * (1.0 - 1e-12);
    plan.balanced = br.balanced;
    return plan;
}

/// Velocity regime of one savings-profile row.
enum class SavingsRegime { zero, ramp, constant_ratio };

struct SavingsRow {
    double r_th_bits = 0.0;
    double v_half_rad_s = 0.0; ///< velocity at r_u = R/2
    double v_opt_rad_s = 0.0;  ///< velocity at the balanced radius
    double t_half_s = 0.0;
    double t_opt_s = 0.0;
    double t_sav_s = 0.0;      ///< t_half - t_opt, >= 0
    double savings_pct = 0.0;  ///< 100 * t_sav / t_half
    SavingsRegime regime = SavingsRegime::constant_ratio;
};

/**
 * Completion-time savings of the balanced radius over the R/2 baseline,
 * across a strictly increasing threshold grid.
 *
 * Both comparison plans share one angular ceiling, the cap evaluated at the
 * balanced radius, so the aircraft respects its linear speed limit on either
 * circle and the clamped regime compares like with like. The profile then
 * has at most three contiguous regimes: zero savings (both clamped), a
 * linear ramp (only the balanced radius still clamped), and a constant
 * savings percentage (neither clamped).
 */
inline std::vector<SavingsRow> savings_profile(const Circle& region,
                                               std::span<const double> r_th_grid,
                                               double penetration, const LinkParams& params,
                                               const VelocityLimit& vlim,
                                               const SolverConfig& cfg) {
    for (std::size_t i = 1; i < r_th_grid.size(); ++i)
        if (!(r_th_grid[i] > r_th_grid[i - 1]))
            throw ValidationError("savings_profile: r_th grid must be strictly increasing");

    const double r_half = 0.5 * region.radius;
    const double r_opt = solve_balanced_radius(region, params, cfg).radius_m;
    const double se_half = worst_corner_se(r_half, region, penetration, params);
    const double se_opt = worst_corner_se(r_opt, region, penetration, params);
    const double v_ceiling = vlim.angular_cap(r_opt);

    std::vector<SavingsRow> rows;
    rows.reserve(r_th_grid.size());
    for (double r_th : r_th_grid) {
        const double vu_half = params.half_beamwidth_rad * params.bandwidth_hz * se_half / r_th;
        const double vu_opt = params.half_beamwidth_rad * params.bandwidth_hz * se_opt / r_th;
        SavingsRow row;
        row.r_th_bits = r_th;
        row.v_half_rad_s = std::min(vu_half, v_ceiling);
        row.v_opt_rad_s = std::min(vu_opt, v_ceiling);
        row.t_half_s = two_pi / row.v_half_rad_s;
        row.t_opt_s = two_pi / row.v_opt_rad_s;
        row.t_sav_s = row.t_half_s - row.t_opt_s;
        row.savings_pct = 100.0 * row.t_sav_s / row.t_half_s;
        const bool half_clamped = vu_half >= v_ceiling;
        const bool opt_clamped = vu_opt >= v_ceiling;
        row.regime = half_clamped && opt_clamped ? SavingsRegime::zero
                     : opt_clamped              ? SavingsRegime::ramp
                                                : SavingsRegime::constant_ratio;
        rows.push_back(row);
    }
    return rows;
}

} // namespace isac
