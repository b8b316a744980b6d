#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sweepcover/orientation.hpp"
#include "test_support.hpp"

using namespace sweepcover;
using sweepcover::testing::make_l_shape;
using sweepcover::testing::make_rect;
using sweepcover::testing::random_simple_polygon;

namespace {

Polygon rotated_rect(double half_w, double half_h, double angle) {
    std::vector<Point2> ring{{-half_w, -half_h}, {half_w, -half_h}, {half_w, half_h},
                             {-half_w, half_h}};
    for (Point2& p : ring) p = rotate(p, angle);
    return Polygon(std::move(ring));
}

void expect_frame_sane(const SweepFrame& f) {
    EXPECT_NEAR(norm(f.u), 1.0, 1e-12);
    EXPECT_NEAR(norm(f.v), 1.0, 1e-12);
    EXPECT_NEAR(dot(f.u, f.v), 0.0, 1e-12);
    EXPECT_TRUE(near(rotate90(f.u), f.v, 1e-12));
    double angle = f.angle();
    EXPECT_GE(angle, -1e-12);
    EXPECT_LT(angle, kPi);
}

void expect_encloses(const SweepFrame& f, const Polygon& poly) {
    double umin = std::numeric_limits<double>::infinity(), umax = -umin;
    double vmin = umin, vmax = -umin;
    poly.for_each_ring([&](const std::vector<Point2>& ring) {
        for (const Point2& p : ring) {
            umin = std::min(umin, dot(p, f.u));
            umax = std::max(umax, dot(p, f.u));
            vmin = std::min(vmin, dot(p, f.v));
            vmax = std::max(vmax, dot(p, f.v));
        }
    });
    EXPECT_NEAR(umax - umin, f.width, 1e-9);
    EXPECT_NEAR(vmax - vmin, f.height, 1e-9);
}

}  // namespace

TEST(MinAreaRect, UnitSquare) {
    SweepFrame f = min_area_rect(make_rect(0, 0, 1, 1));
    expect_frame_sane(f);
    EXPECT_NEAR(f.width * f.height, 1.0, 1e-9);
    // One rectangle side is collinear with a hull edge.
    EXPECT_NEAR(direction_difference(f.angle(), 0.0), 0.0, 1e-9);
}

TEST(MinAreaRect, RotatedRectangleRecoversAngleAndArea) {
    double angle = 30.0 * kPi / 180.0;
    SweepFrame f = min_area_rect(rotated_rect(2.0, 1.0, angle));
    expect_frame_sane(f);
    EXPECT_NEAR(f.width * f.height, 8.0, 1e-9);
    EXPECT_NEAR(direction_difference(f.angle(), angle), 0.0, 1e-6);
    EXPECT_GE(f.width, f.height);  // u is the long side
}

TEST(MinAreaRect, LShapeMatchesExhaustiveScan) {
    Polygon l = make_l_shape();
    SweepFrame f = min_area_rect(l);
    expect_frame_sane(f);
    expect_encloses(f, l);
    std::vector<Point2> pts(l.exterior());
    double scan_min = oracle::min_rect_area_by_scan(pts, 0.001);
    EXPECT_LE(f.width * f.height, scan_min * 1.001);
    EXPECT_GE(f.width * f.height, scan_min * 0.999);
}

TEST(MinAreaRect, NeverBeatenByAnyTestedAngle) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Polygon p = random_simple_polygon(rng, 12, 30.0);
        SweepFrame f = min_area_rect(p);
        std::vector<Point2> pts(p.exterior());
        std::uniform_real_distribution<double> angle(0.0, kPi);
        for (int a = 0; a < 500; ++a) {
            EXPECT_LE(f.width * f.height, oracle::rect_area_at_angle(pts, angle(rng)) + 1e-9);
        }
    }
}

TEST(MinAreaRect, EquivariantUnderRotation) {
    std::mt19937_64 rng(7);
    Polygon base = random_simple_polygon(rng, 11, 25.0);
    SweepFrame f0 = min_area_rect(base);
    for (double theta : {0.3, 1.1, 2.7}) {
        SweepFrame f1 = min_area_rect(apply_transform(base, RigidTransform(theta, {5, -3})));
        EXPECT_NEAR(direction_difference(f1.angle(), f0.angle() + theta), 0.0, 1e-6);
        EXPECT_NEAR(f1.width * f1.height, f0.width * f0.height, 1e-6 * f0.width * f0.height);
    }
}

TEST(MinAreaRect, ThrowsOnDegenerateInput) {
    EXPECT_THROW(min_area_rect(Polygon({{0, 0}, {1, 0}, {2, 1e-15}})), PlannerError);
}

TEST(OrientationScan, LongRectanglePicksLongAxis) {
    SweepFrame f = orientation_by_scan(make_rect(0, 0, 10, 2), kPi / 180.0);
    expect_frame_sane(f);
    EXPECT_NEAR(direction_difference(f.angle(), 0.0), 0.0, 1e-12);
    EXPECT_NEAR(f.height, 2.0, 1e-12);
}

TEST(OrientationScan, UnitSquareTieBreaksToSmallestAngle) {
    SweepFrame f = orientation_by_scan(make_rect(0, 0, 1, 1), kPi / 180.0);
    EXPECT_NEAR(f.angle(), 0.0, 1e-12);
}

TEST(OrientationScan, ReturnedAngleMinimizesObjectiveOverScanSet) {
    std::mt19937_64 rng(13);
    Polygon hex = random_simple_polygon(rng, 6, 20.0);
    double step = kPi / 180.0;
    SweepFrame f = orientation_by_scan(hex, step);
    std::vector<Point2> pts(hex.exterior());
    for (long k = 0; k * step < kPi - 1e-12; ++k) {
        EXPECT_LE(f.height, oracle::projected_height_at_angle(pts, k * step) + 1e-12);
    }
}

TEST(OrientationScan, RejectsNonPositiveStep) {
    EXPECT_THROW(orientation_by_scan(make_rect(0, 0, 1, 1), 0.0), PlannerError);
}

TEST(OrientationPca, AxisAlignedRectangle) {
    PcaOrientation r = orientation_by_pca(make_rect(0, 0, 10, 2));
    EXPECT_FALSE(r.mar_fallback);
    EXPECT_NEAR(direction_difference(r.frame.angle(), 0.0), 0.0, 1e-12);
}

TEST(OrientationPca, RotatedRectangleMatchesClosedFormEigenvector) {
    double angle = kPi / 4.0;
    PcaOrientation r = orientation_by_pca(rotated_rect(5.0, 1.0, angle));
    EXPECT_FALSE(r.mar_fallback);
    // Closed-form 2x2 eigenvector check, recomputed here from the covariance.
    std::vector<Point2> pts = rotated_rect(5.0, 1.0, angle).exterior();
    Point2 mean{0, 0};
    for (const Point2& p : pts) mean = mean + p;
    mean = mean / 4.0;
    double cxx = 0, cyy = 0, cxy = 0;
    for (const Point2& p : pts) {
        cxx += (p.x - mean.x) * (p.x - mean.x);
        cyy += (p.y - mean.y) * (p.y - mean.y);
        cxy += (p.x - mean.x) * (p.y - mean.y);
    }
    double lambda = 0.5 * (cxx + cyy + std::sqrt((cxx - cyy) * (cxx - cyy) + 4 * cxy * cxy));
    Point2 eig{cxy, lambda - cxx};  // (A - lambda I) null vector
    double expected_angle = std::atan2(eig.y, eig.x);
    EXPECT_NEAR(direction_difference(r.frame.angle(), expected_angle), 0.0, 1e-9);
    EXPECT_NEAR(direction_difference(r.frame.angle(), angle), 0.0, 1e-9);
}

TEST(OrientationPca, SquareFallsBackToMar) {
    PcaOrientation r = orientation_by_pca(make_rect(0, 0, 1, 1));
    EXPECT_TRUE(r.mar_fallback);
    EXPECT_NEAR(r.frame.width * r.frame.height, 1.0, 1e-9);
}

TEST(OrientationMinWidth, RectangleHeightIsShortSide) {
    SweepFrame f = orientation_min_width(make_rect(0, 0, 10, 2));
    EXPECT_NEAR(f.height, 2.0, 1e-12);
    EXPECT_NEAR(direction_difference(f.angle(), 0.0), 0.0, 1e-12);
}

TEST(OrientationMinWidth, EquilateralTriangleAltitude) {
    Polygon tri({{0, 0}, {2, 0}, {1, std::sqrt(3.0)}});
    SweepFrame f = orientation_min_width(tri);
    EXPECT_NEAR(f.height, std::sqrt(3.0), 1e-9);
}

TEST(OrientationMinWidth, BeatsRandomAnglesOnRandomPolygon) {
    std::mt19937_64 rng(17);
    Polygon p = random_simple_polygon(rng, 15, 40.0);
    SweepFrame f = orientation_min_width(p);
    std::vector<Point2> pts(p.exterior());
    std::uniform_real_distribution<double> angle(0.0, kPi);
    for (int a = 0; a < 10000; ++a) {
        EXPECT_LE(f.height, oracle::projected_height_at_angle(pts, angle(rng)) + 1e-9);
    }
}

TEST(OrientationStrategies, AllFramesEncloseTheInput) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        Polygon p = random_simple_polygon(rng, 10, 30.0);
        for (OrientationKind kind : {OrientationKind::mar, OrientationKind::scan,
                                     OrientationKind::pca, OrientationKind::minwidth}) {
            OrientationStrategy s;
            s.kind = kind;
            SweepFrame f = compute_orientation(p, s);
            expect_frame_sane(f);
            expect_encloses(f, p);
        }
    }
}

TEST(OrientationStrategies, ParseNames) {
    EXPECT_EQ(orientation_kind_from_string("mar"), OrientationKind::mar);
    EXPECT_EQ(orientation_kind_from_string("minwidth"), OrientationKind::minwidth);
    EXPECT_THROW(orientation_kind_from_string("bogus"), PlannerError);
}
