#pragma once
/**
 * @file linkbudget.hpp
 * @brief Directional-antenna link budget over a circular scanning area:
 *        antenna gain, free-space and penetration losses, spectral
 *        efficiency, and the loss metric balanced by the trajectory solver.
 *
 * Conventions:
 *  - the elevation angle is measured from nadir, phi_e = atan(d / H) in
 *    [0, pi/2), so phi_e = 0 directly beneath the UAV;
 *  - to keep the nadir gain finite, |phi_e| is clamped below at atan(1 / H),
 *    the angle subtended by a 1 m horizontal offset;
 *  - penetration acts as attenuation: indoor SNR is divided by the
 *    penetration loss; outdoor ground uses a configurable linear factor.
 */

#include <cmath>

#include "isac/errors.hpp"
#include "isac/geometry.hpp"

namespace isac {

/// Free-space propagation speed used by the whole library, m/s.
inline constexpr double speed_of_light = 3.0e8;

/// Peak directional gain constant G0 (dimensionless).
inline constexpr double antenna_peak_gain =
    7500.0 * (std::numbers::pi / 180.0) * (std::numbers::pi / 180.0);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Radio parameters of the UAV-to-ground link.
struct LinkParams {
    double carrier_ghz = 3.0;             ///< f_c, GHz
    double tx_power_dbm = 20.0;           ///< P
    double noise_density_dbm_hz = -174.0; ///< N0
    double bandwidth_hz = 20e6;           ///< channel bandwidth
    double half_beamwidth_rad = std::numbers::pi / 6.0; ///< azimuth half-beamwidth
    double altitude_m = 100.0;            ///< fixed flight altitude H
    double peak_gain = antenna_peak_gain; ///< G0
    double outdoor_penetration = 1.0;     ///< linear loss factor for outdoor ground

    double carrier_hz() const { return carrier_ghz * 1e9; }
    double noise_power_dbm() const { return noise_density_dbm_hz + linear_to_db(bandwidth_hz); }
    /// Normalized SNR gamma = P / sigma^2, linear.
    double snr_linear() const { return db_to_linear(tx_power_dbm - noise_power_dbm()); }
    /// Smallest elevation the gain model distinguishes from nadir.
    double min_elevation() const { return std::atan(1.0 / altitude_m); }

    void validate() const {
        if (!(carrier_ghz > 0)) throw ValidationError("LinkParams: carrier_ghz must be > 0");
        if (!(bandwidth_hz > 0)) throw ValidationError("LinkParams: bandwidth_hz must be > 0");
        if (!(half_beamwidth_rad > 0) || !(half_beamwidth_rad < std::numbers::pi / 2))
            throw ValidationError("LinkParams: half_beamwidth_rad must be in (0, pi/2)");
        if (!(altitude_m > 0)) throw ValidationError("LinkParams: altitude_m must be > 0");
        if (!(peak_gain > 0)) throw ValidationError("LinkParams: peak_gain must be > 0");
        if (!(outdoor_penetration > 0))
            throw ValidationError("LinkParams: outdoor_penetration must be > 0");
        if (!std::isfinite(snr_linear()))
            throw ValidationError("LinkParams: derived SNR is not finite");
    }
};

/// Ground location plus whether it sits behind building walls.
struct GroundPoint {
    Point2D position;
    bool indoor = false;
};

/// Which reference location a loss metric is evaluated at.
enum class MetricTarget { worst_corner, center };

/// The quantity balanced by the radius solver; see worst_point_loss_metric.
struct LossMetric {
    double value = 0.0;
};

/**
 * Directional antenna gain.
 *
 * Inside the beam (|phi_e| <= pi/2 and |azimuth| <= half-beamwidth) the gain
 * is G0 / (half_beamwidth * |phi_e|); outside the beam the sidelobe gain is
 * taken as exactly zero.
 *
 * Throws SingularElevation when |phi_e| < 1e-9 inside the beam; callers that
 * accept ground positions clamp the elevation first (spectral_efficiency
 * does).
 */
inline double antenna_gain(double elevation_rad, double azimuth_rad, const LinkParams& params) {
    const double abs_el = std::abs(elevation_rad);
    if (abs_el > std::numbers::pi / 2.0 || std::abs(azimuth_rad) > params.half_beamwidth_rad)
        return 0.0;
    if (abs_el < 1e-9)
        throw SingularElevation("antenna_gain: elevation too close to nadir");
    return params.peak_gain / (params.half_beamwidth_rad * abs_el);
}

/// Building penetration loss, linear factor: 10^(0.5 + 0.4 * f_c[GHz]).
inline double penetration_loss(double carrier_ghz) {
    if (!(carrier_ghz > 0)) throw OutOfRange("penetration_loss: carrier must be > 0");
    return std::pow(10.0, 0.5 + 0.4 * carrier_ghz);
}

/// Linear penetration factor applicable to a ground point.
inline double penetration_factor(bool indoor, const LinkParams& params) {
    return indoor ? penetration_loss(params.carrier_ghz) : params.outdoor_penetration;
}

/**
 * Free-space gain between the UAV and a ground point at horizontal
 * distance d: c^2 / (4 pi f sqrt(d^2 + H^2))^2. Strictly decreasing in d.
 */
inline double path_gain(double horizontal_m, const LinkParams& params) {
    if (horizontal_m < 0) throw OutOfRange("path_gain: distance must be >= 0");
    const double slant = std::hypot(horizontal_m, params.altitude_m);
    const double denom = 4.0 * std::numbers::pi * params.carrier_hz() * slant;
    return speed_of_light * speed_of_light / (denom * denom);
}

/**
 * In-beam SNR at horizontal distance d with penetration factor `pen`,
 * with the elevation clamp applied. This is the quantity inside the
 * Shannon log.
 */
inline double snr_at_distance(double horizontal_m, double pen, const LinkParams& params) {
    const double elevation =
        std::max(std::atan(horizontal_m / params.altitude_m), params.min_elevation());
    const double slant = std::hypot(horizontal_m, params.altitude_m);
    const double denom = 4.0 * std::numbers::pi * params.carrier_hz() * slant;
    return params.snr_linear() * params.peak_gain * speed_of_light * speed_of_light /
           (params.half_beamwidth_rad * elevation * denom * denom * pen);
}

/// Shannon spectral efficiency (bits/s/Hz) for an in-beam distance.
inline double spectral_efficiency_at(double horizontal_m, double pen, const LinkParams& params) {
    return std::log2(1.0 + snr_at_distance(horizontal_m, pen, params));
}

/**
 * Spectral efficiency seen by a ground point from the UAV at uav_xy.
 * The caller's footprint model decides azimuth_ok; out-of-beam points
 * receive exactly zero.
 */
inline double spectral_efficiency(const GroundPoint& x, const Point2D& uav_xy, bool azimuth_ok,
                                  const LinkParams& params) {
    if (!azimuth_ok) return 0.0;
    const double d = x.position.distance_to(uav_xy);
    return spectral_efficiency_at(d, penetration_factor(x.indoor, params), params);
}

/**
 * Horizontal distance from a UAV on the trajectory circle of radius r_u to
 * the far footprint corner of the coverage area: the boundary point offset
 * by the half-beamwidth from the UAV's own polar angle.
 */
inline double worst_corner_distance(double r_u, const Circle& region, double half_beamwidth_rad) {
    const double r = region.radius;
    return std::sqrt(r * r + r_u * r_u - 2.0 * r * r_u * std::cos(half_beamwidth_rad));
}

/// The worst footprint corner, in the canonical frame with the UAV at angle 0.
inline Point2D worst_corner_point(const Circle& region, double half_beamwidth_rad) {
    return region.center + Point2D{region.radius * std::cos(half_beamwidth_rad),
                                   region.radius * std::sin(half_beamwidth_rad)};
}

/**
 * SNR-denominator loss metric |phi_e| * half_beamwidth * (4 pi f slant / c)^2
 * at either the worst footprint corner or the area center, for a UAV on the
 * trajectory circle of radius r_u.
 *
 * The corner metric falls and the center metric rises as r_u grows from
 * R/2, so their difference crosses zero at most once; that crossing is the
 * loss-balancing radius.
 *
 * Throws OutOfRange unless r_u is in [R/2, R].
 */
inline LossMetric worst_point_loss_metric(double r_u, MetricTarget target, const Circle& region,
                                          const LinkParams& params) {
    const double r = region.radius;
    if (r_u < 0.5 * r - 1e-9 * r || r_u > r + 1e-9 * r)
        throw OutOfRange("worst_point_loss_metric: r_u outside [R/2, R]");
    const double d = target == MetricTarget::worst_corner
                         ? worst_corner_distance(r_u, region, params.half_beamwidth_rad)
                         : r_u;
    const double elevation = std::atan(d / params.altitude_m);
    const double slant2 = d * d + params.altitude_m * params.altitude_m;
    const double scale = 4.0 * std::numbers::pi * params.carrier_hz() / speed_of_light;
    return LossMetric{elevation * params.half_beamwidth_rad * scale * scale * slant2};
}

} // namespace isac
