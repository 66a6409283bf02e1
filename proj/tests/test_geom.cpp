#include "qfm/geom.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qfm;

TEST(Stereographic, Fixtures) {
    PlanePoint w = to_plane({1, 0, 0});
    EXPECT_FALSE(w.at_inf);
    EXPECT_NEAR(w.z.real(), 1.0, 1e-15);
    EXPECT_NEAR(w.z.imag(), 0.0, 1e-15);

    EXPECT_TRUE(to_plane({0, 0, 1}).at_inf);

    PlanePoint o = to_plane({0, 0, -1});
    EXPECT_NEAR(std::abs(o.z), 0.0, 1e-15);

    SpherePoint pole = to_sphere(PlanePoint::inf());
    EXPECT_NEAR(dist(pole, {0, 0, 1}), 0.0, 1e-15);
}

TEST(Stereographic, RoundTrip) {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        SpherePoint p = oracles::random_point(rng);
        SpherePoint q = to_sphere(to_plane(p));
        EXPECT_LT(dist(p, q), 1e-12);
    }
    // near the pole the chart blows up but the round trip must survive
    SpherePoint near_pole = normalized(Vec3{1e-7, -2e-7, 1.0});
    EXPECT_LT(dist(to_sphere(to_plane(near_pole)), near_pole), 1e-8);
}

TEST(Stereographic, LatitudeRadius) {
    // |zeta|^2 = (1+z)/(1-z) on a latitude circle
    SpherePoint p{0.6, 0, -0.8};
    EXPECT_NEAR(std::abs(to_plane(p).z), 1.0 / 3.0, 1e-14);
}

TEST(TangentBasis, Orthonormal) {
    SplitMix64 rng(12);
    for (int i = 0; i < 100; ++i) {
        Vec3 n = oracles::random_point(rng);
        Vec3 u, v;
        tangent_basis(n, u, v);
        EXPECT_NEAR(norm(u), 1.0, 1e-12);
        EXPECT_NEAR(norm(v), 1.0, 1e-12);
        EXPECT_NEAR(dot(u, n), 0.0, 1e-12);
        EXPECT_NEAR(dot(v, n), 0.0, 1e-12);
        EXPECT_NEAR(dot(u, v), 0.0, 1e-12);
        EXPECT_NEAR(dot(cross(u, v), n), 1.0, 1e-12);
    }
}

TEST(RotateAlign, MapsAndPreserves) {
    SplitMix64 rng(13);
    for (int i = 0; i < 100; ++i) {
        Vec3 from = oracles::random_point(rng);
        Vec3 to = oracles::random_point(rng);
        EXPECT_LT(dist(rotate_align(from, to, from), to), 1e-12);
        Vec3 p = oracles::random_point(rng);
        Vec3 q = oracles::random_point(rng);
        EXPECT_NEAR(dot(rotate_align(from, to, p), rotate_align(from, to, q)), dot(p, q),
                    1e-12);
    }
}

TEST(RotateAlign, DegenerateAxes) {
    Vec3 p{0.1, 0.2, 0.9};
    EXPECT_LT(dist(rotate_align({0, 0, 1}, {0, 0, 1}, p), p), 1e-15);

    Vec3 q = rotate_align({0, 0, 1}, {0, 0, -1}, {0, 0, 1});
    EXPECT_LT(dist(q, {0, 0, -1}), 1e-12);
    Vec3 r = rotate_align({0, 0, 1}, {0, 0, -1}, p);
    EXPECT_NEAR(norm(r), norm(p), 1e-12);
    EXPECT_NEAR(r.z, -p.z, 1e-12);
}

TEST(Angles, FixturesAndSmallAngles) {
    EXPECT_NEAR(angle_between({1, 0, 0}, {0, 1, 0}), kPi / 2, 1e-15);
    EXPECT_NEAR(angle_between({1, 0, 0}, {-1, 0, 0}), kPi, 1e-15);
    EXPECT_NEAR(angle_between({1, 0, 0}, {1, 0, 0}), 0.0, 1e-15);

    double eps = 1e-8;
    Vec3 a{1, 0, 0}, b = normalized(Vec3{1, eps, 0});
    EXPECT_NEAR(angle_between(a, b) / eps, 1.0, 1e-6);

    SplitMix64 rng(14);
    for (int i = 0; i < 100; ++i) {
        Vec3 p = oracles::random_point(rng), q = oracles::random_point(rng);
        EXPECT_NEAR(angle_between(p, q), std::acos(std::clamp(dot(p, q), -1.0, 1.0)), 1e-7);
    }
}

TEST(PlanePoint, InfinityPlumbing) {
    PlanePoint i1 = PlanePoint::inf(), i2 = PlanePoint::inf();
    EXPECT_TRUE(approx(i1, i2));
    EXPECT_FALSE(approx(i1, PlanePoint::of({3, 1})));
    EXPECT_TRUE(approx(PlanePoint::of({2, -1}), PlanePoint::of({2, -1})));
}
