#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isac/geometry.hpp"
#include "test_util.hpp"

using namespace isac;

TEST(NearestPointOnCircle, CollinearCase) {
    const Point2D q = nearest_point_on_circle(Circle{{0, 0}, 1.0}, {2, 0});
    EXPECT_NEAR(q.x, 1.0, 1e-12);
    EXPECT_NEAR(q.y, 0.0, 1e-12);
}

TEST(NearestPointOnCircle, UnitVectorFormula) {
    const Point2D q = nearest_point_on_circle(Circle{{0, 0}, 1.0}, {3, 4});
    EXPECT_NEAR(q.x, 0.6, 1e-12);
    EXPECT_NEAR(q.y, 0.8, 1e-12);
    // cross-checked by boundary grid search
    const Point2D g = testutil::grid_nearest_on_circle(Circle{{0, 0}, 1.0}, {3, 4});
    EXPECT_NEAR(q.distance_to(Point2D{3, 4}), g.distance_to(Point2D{3, 4}), 1e-6);
}

TEST(NearestPointOnCircle, CenterCoincidenceThrows) {
    EXPECT_THROW(nearest_point_on_circle(Circle{{5, 5}, 2.0}, {5, 5}), DegenerateInput);
}

TEST(NearestPointOnCircle, GlobalMinimizerProperty) {
    // No boundary grid point may beat the formula by more than 1e-9.
    auto gen = testutil::rng(101);
    for (int trial = 0; trial < 2000; ++trial) {
        const Circle c{{testutil::uniform(gen, -100, 100), testutil::uniform(gen, -100, 100)},
                       testutil::uniform(gen, 0.1, 50)};
        Point2D p{testutil::uniform(gen, -200, 200), testutil::uniform(gen, -200, 200)};
        if (p.distance_to(c.center) < 1e-6) p.x += 1.0;
        const Point2D q = nearest_point_on_circle(c, p);
        const double dq = q.distance_to(p);
        EXPECT_NEAR(q.distance_to(c.center), c.radius, 1e-9 * c.radius);
        for (int i = 0; i < 1000; ++i) {
            const Point2D b = c.point_at(two_pi * i / 1000.0);
            ASSERT_GE(b.distance_to(p), dq - 1e-9);
        }
    }
}

TEST(SmallerArcBetween, QuarterCircle) {
    const Arc arc = smaller_arc_between(Circle{{0, 0}, 1.0}, {1, 0}, {0, 1});
    EXPECT_NEAR(arc.start_angle, 0.0, 1e-12);
    EXPECT_NEAR(arc.sweep_angle, std::numbers::pi / 2, 1e-12);
    EXPECT_EQ(arc.direction, ArcDirection::ccw);
    EXPECT_NEAR(arc.end_angle(), std::numbers::pi / 2, 1e-12);
}

TEST(SmallerArcBetween, AntipodalTieIsCcw) {
    const Arc arc = smaller_arc_between(Circle{{0, 0}, 1.0}, {1, 0}, {-1, 0});
    EXPECT_EQ(arc.direction, ArcDirection::ccw);
    EXPECT_NEAR(arc.sweep_angle, std::numbers::pi, 1e-12);
}

TEST(SmallerArcBetween, ClockwiseCase) {
    const Arc arc = smaller_arc_between(Circle{{0, 0}, 1.0}, {1, 0},
                                        {std::cos(-0.3), std::sin(-0.3)});
    EXPECT_EQ(arc.direction, ArcDirection::cw);
    EXPECT_NEAR(arc.sweep_angle, 0.3, 1e-12);
}

TEST(SmallerArcBetween, OffBoundaryThrows) {
    EXPECT_THROW(smaller_arc_between(Circle{{0, 0}, 1.0}, {1.1, 0}, {0, 1}), NotOnBoundary);
    EXPECT_THROW(smaller_arc_between(Circle{{0, 0}, 1.0}, {1, 0}, {0, 0.9}), NotOnBoundary);
}

TEST(SmallerArcBetween, SweepNeverExceedsPi) {
    auto gen = testutil::rng(202);
    for (int trial = 0; trial < 5000; ++trial) {
        const Circle c{{testutil::uniform(gen, -10, 10), testutil::uniform(gen, -10, 10)},
                       testutil::uniform(gen, 0.1, 20)};
        const Point2D a = c.point_at(testutil::uniform(gen, 0, two_pi));
        const Point2D b = c.point_at(testutil::uniform(gen, 0, two_pi));
        const Arc arc = smaller_arc_between(c, a, b);
        ASSERT_LE(arc.sweep_angle, std::numbers::pi + 1e-12);
        ASSERT_LE(arc.start_point().distance_to(a), 1e-9 * c.radius);
        ASSERT_LE(arc.end_point().distance_to(b), 1e-6 * c.radius);
    }
}

TEST(TourLength, FullCircleIsCircumference) {
    std::vector<PathSegment> segs{Arc::full_circle(Circle{{0, 0}, 1.0}, 0.0)};
    EXPECT_NEAR(tour_length(segs), two_pi, 1e-12);
}

TEST(TourLength, ThreeFourFive) {
    std::vector<PathSegment> segs{Line{{0, 0}, {3, 4}}};
    EXPECT_NEAR(tour_length(segs), 5.0, 1e-12);
}

TEST(TourLength, ComponentwiseSum) {
    // full unit circle anchored at (1,0), tangent line up 2, full circle r=2
    std::vector<PathSegment> segs{
        Arc::full_circle(Circle{{0, 0}, 1.0}, 0.0),
        Line{{1, 0}, {1, 2}},
        Arc::full_circle(Circle{{-1, 2}, 2.0}, 0.0),
    };
    EXPECT_NEAR(tour_length(segs), two_pi + 2.0 + 4.0 * std::numbers::pi, 1e-12);
}

TEST(TourLength, DiscontinuityThrows) {
    std::vector<PathSegment> segs{Line{{0, 0}, {1, 0}}, Line{{1.1, 0}, {2, 0}}};
    EXPECT_THROW(tour_length(segs), Discontinuous);
}

TEST(TourLength, RigidMotionInvariance) {
    auto gen = testutil::rng(303);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Point2D> pts;
        Point2D at{0, 0};
        pts.push_back(at);
        for (int i = 0; i < 5; ++i) {
            at = at + Point2D{testutil::uniform(gen, -10, 10), testutil::uniform(gen, -10, 10)};
            pts.push_back(at);
        }
        std::vector<PathSegment> segs;
        for (std::size_t i = 1; i < pts.size(); ++i) segs.emplace_back(Line{pts[i - 1], pts[i]});
        const double base = tour_length(segs);

        const double ang = testutil::uniform(gen, 0, two_pi);
        const Point2D shift{testutil::uniform(gen, -50, 50), testutil::uniform(gen, -50, 50)};
        auto xform = [&](const Point2D& p) {
            return Point2D{p.x * std::cos(ang) - p.y * std::sin(ang) + shift.x,
                           p.x * std::sin(ang) + p.y * std::cos(ang) + shift.y};
        };
        std::vector<PathSegment> moved;
        for (std::size_t i = 1; i < pts.size(); ++i)
            moved.emplace_back(Line{xform(pts[i - 1]), xform(pts[i])});
        const double after = tour_length(moved);
        ASSERT_NEAR(after, base, 1e-12 * std::max(1.0, base));
    }
}

TEST(Angles, WrapAndDistance) {
    EXPECT_NEAR(wrap_angle(-0.5), two_pi - 0.5, 1e-12);
    EXPECT_NEAR(wrap_angle(two_pi + 0.25), 0.25, 1e-12);
    EXPECT_NEAR(angular_distance(0.1, two_pi - 0.1), 0.2, 1e-12);
    EXPECT_NEAR(angular_distance(1.0, 1.0 + std::numbers::pi), std::numbers::pi, 1e-12);
}

TEST(Circle, RejectsNonPositiveRadius) {
    EXPECT_THROW(Circle({0, 0}, 0.0), ValidationError);
    EXPECT_THROW(Circle({0, 0}, -1.0), ValidationError);
}
