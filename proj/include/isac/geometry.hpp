#pragma once
/**
 * @file geometry.hpp
 * @brief Planar primitives for circular trajectories: points, circles, arcs,
 *        nearest boundary points, smaller connecting arcs and tour lengths.
 *
 * All angles are radians, normalized to [0, 2*pi); the angle of a boundary
 * point is measured at the circle center from the +x axis. Everything here is
 * a pure value type; functions are reentrant.
 */

#include <cmath>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "isac/errors.hpp"

namespace isac {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// 2D point / vector, double precision.
struct Point2D {
    double x{0.0};
    double y{0.0};

    constexpr Point2D() = default;
    constexpr Point2D(double px, double py) : x(px), y(py) {}

    constexpr Point2D operator+(const Point2D& r) const { return {x + r.x, y + r.y}; }
    constexpr Point2D operator-(const Point2D& r) const { return {x - r.x, y - r.y}; }
    constexpr Point2D operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Point2D operator*(double s, const Point2D& v) { return {v.x * s, v.y * s}; }

    constexpr double dot(const Point2D& r) const { return x * r.x + y * r.y; }
    double norm() const { return std::hypot(x, y); }
    double distance_to(const Point2D& r) const { return std::hypot(x - r.x, y - r.y); }

    /// Unit vector in the same direction; throws DegenerateInput below eps.
    Point2D unit(double eps = 1e-12) const {
        const double n = norm();
        if (n <= eps) throw DegenerateInput("cannot normalize a near-zero vector");
        return {x / n, y / n};
    }
};

/// Normalize an angle to [0, 2*pi).
inline double wrap_angle(double a) {
    double w = std::fmod(a, two_pi);
    if (w < 0.0) w += two_pi;
    // fmod of a tiny negative can round to two_pi itself
    if (w >= two_pi) w = 0.0;
    return w;
}

/// Smallest absolute angular separation between two angles, in [0, pi].
inline double angular_distance(double a, double b) {
    const double d = wrap_angle(a - b);
    return d <= std::numbers::pi ? d : two_pi - d;
}

/// Circle with positive radius.
struct Circle {
    Point2D center;
    double radius{1.0};

    Circle() = default;
    Circle(Point2D c, double r) : center(c), radius(r) {
        if (!(r > 0.0) || !std::isfinite(r))
            throw ValidationError("Circle: radius must be positive and finite");
    }

    Point2D point_at(double angle) const {
        return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
    }
    double angle_of(const Point2D& p) const { return wrap_angle(std::atan2(p.y - center.y, p.x - center.x)); }
};

enum class ArcDirection { ccw, cw };

/**
 * Circular arc: anchored at start_angle, sweeping sweep_angle in the given
 * direction. sweep_angle is in [0, 2*pi] so a full revolution is exact.
 */
struct Arc {
    Circle circle;
    double start_angle{0.0}; ///< normalized to [0, 2*pi)
    double sweep_angle{0.0}; ///< swept magnitude, in [0, 2*pi]
    ArcDirection direction{ArcDirection::ccw};

    double end_angle() const {
        const double signed_sweep = direction == ArcDirection::ccw ? sweep_angle : -sweep_angle;
        return wrap_angle(start_angle + signed_sweep);
    }
    double length() const { return circle.radius * sweep_angle; }
    Point2D start_point() const { return circle.point_at(start_angle); }
    Point2D end_point() const { return circle.point_at(end_angle()); }

    /// Angle after sweeping a fraction s in [0, 1] of the arc.
    double angle_at(double s) const {
        const double signed_sweep = direction == ArcDirection::ccw ? sweep_angle : -sweep_angle;
        return wrap_angle(start_angle + s * signed_sweep);
    }
    Point2D point_at(double s) const { return circle.point_at(angle_at(s)); }

    static Arc full_circle(const Circle& c, double anchor_angle, ArcDirection dir = ArcDirection::ccw) {
        return Arc{c, wrap_angle(anchor_angle), two_pi, dir};
    }
};

/// Straight segment.
struct Line {
    Point2D from;
    Point2D to;

    double length() const { return from.distance_to(to); }
    Point2D point_at(double s) const { return {from.x + s * (to.x - from.x), from.y + s * (to.y - from.y)}; }
};

using PathSegment = std::variant<Arc, Line>;

inline Point2D segment_start(const PathSegment& s) {
    return std::visit([](const auto& seg) -> Point2D {
        if constexpr (std::is_same_v<std::decay_t<decltype(seg)>, Arc>) return seg.start_point();
        else return seg.from;
    }, s);
}

inline Point2D segment_end(const PathSegment& s) {
    return std::visit([](const auto& seg) -> Point2D {
        if constexpr (std::is_same_v<std::decay_t<decltype(seg)>, Arc>) return seg.end_point();
        else return seg.to;
    }, s);
}

inline double segment_length(const PathSegment& s) {
    return std::visit([](const auto& seg) { return seg.length(); }, s);
}

/**
 * Closest point of a circle boundary to an exterior/interior query point.
 * Equals center + radius * unit(p - center).
 *
 * Throws DegenerateInput when p is within 1e-12 of the center.
 */
inline Point2D nearest_point_on_circle(const Circle& c, const Point2D& p) {
    const Point2D d = p - c.center;
    if (d.norm() <= 1e-12) throw DegenerateInput("nearest_point_on_circle: point coincides with center");
    const Point2D u = d.unit();
    return c.center + c.radius * u;
}

/**
 * The arc of swept angle <= pi containing both boundary points, directed
 * from a to b. An exact antipodal pair resolves to the ccw arc from a.
 *
 * Throws NotOnBoundary if either point is off the circle by more than
 * 1e-9 * radius.
 */
inline Arc smaller_arc_between(const Circle& c, const Point2D& a, const Point2D& b) {
    const double tol = 1e-9 * c.radius;
    if (std::abs(a.distance_to(c.center) - c.radius) > tol)
        throw NotOnBoundary("smaller_arc_between: first point not on circle");
    if (std::abs(b.distance_to(c.center) - c.radius) > tol)
        throw NotOnBoundary("smaller_arc_between: second point not on circle");

    const double aa = c.angle_of(a);
    const double ab = c.angle_of(b);
    const double ccw_sweep = wrap_angle(ab - aa);
    if (ccw_sweep <= std::numbers::pi)
        return Arc{c, aa, ccw_sweep, ArcDirection::ccw};
    return Arc{c, aa, two_pi - ccw_sweep, ArcDirection::cw};
}

/**
 * Total length of a contiguous chain of arcs and straight segments.
 *
 * Throws Discontinuous when the end of one segment is farther than
 * join_tol (meters) from the start of the next.
 */
inline double tour_length(std::span<const PathSegment> segments, double join_tol = 1e-6) {
    double total = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i > 0 && segment_end(segments[i - 1]).distance_to(segment_start(segments[i])) > join_tol)
            throw Discontinuous("tour_length: segments " + std::to_string(i - 1) + " and " +
                                std::to_string(i) + " do not join");
        total += segment_length(segments[i]);
    }
    return total;
}

inline double tour_length(const std::vector<PathSegment>& segments, double join_tol = 1e-6) {
    return tour_length(std::span<const PathSegment>(segments), join_tol);
}

} // namespace isac
