#include "qfm/distances.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qfm;

namespace {

CirclePair random_disjoint_pair(SplitMix64& rng, double hmax = 0.85) {
    for (int tries = 0; tries < 1000; ++tries) {
        SphereCircle a = oracles::random_circle(rng, hmax);
        SphereCircle b = oracles::random_circle(rng, hmax);
        if (circles_intersect(a, b, 1e-4)) continue;
        return canonical_disjoint_pair(a, b);
    }
    throw std::runtime_error("no disjoint pair found");
}

}  // namespace

TEST(PlaneDistance, ConcentricFixture) {
    SphereCircle outer{{0, 0, 1}, 0};      // unit circle in the chart
    SphereCircle inner{{0, 0, 1}, -0.8};   // radius 1/3 in the chart
    double want = std::log(3.0);
    EXPECT_NEAR(plane_distance_dL(outer, inner), want, 1e-12);
    EXPECT_NEAR(oracles::closed_plane_distance(outer, inner), want, 1e-12);
    EXPECT_NEAR(oracles::minimized_plane_distance(outer, inner), want, 1e-9);
    // the closed form for this pair is acosh(5/3)
    EXPECT_NEAR(std::acosh(5.0 / 3.0), want, 1e-15);
}

TEST(PlaneDistance, TangentAndCrossingGiveZero) {
    SphereCircle a = circle_from_cap({0, 0, 1}, 0.4);
    SphereCircle b = circle_from_cap({std::sin(0.7), 0, std::cos(0.7)}, 0.3);
    EXPECT_EQ(plane_distance_dL(a, b), 0.0);  // externally tangent
    SphereCircle c = circle_from_cap({std::sin(0.5), 0, std::cos(0.5)}, 0.3);
    EXPECT_EQ(plane_distance_dL(a, c), 0.0);  // crossing
}

TEST(PlaneDistance, MatchesClosedForm) {
    SplitMix64 rng(41);
    for (int i = 0; i < 200; ++i) {
        CirclePair p = random_disjoint_pair(rng);
        double got = plane_distance_dL(p);
        double want = oracles::closed_plane_distance(p.first, p.second);
        EXPECT_NEAR(got, want, 1e-10 * (1 + want)) << "pair " << i;
    }
}

TEST(PlaneDistance, MatchesBruteForceMinimizer) {
    SplitMix64 rng(42);
    for (int i = 0; i < 100; ++i) {
        CirclePair p = random_disjoint_pair(rng);
        double got = plane_distance_dL(p);
        double want = oracles::minimized_plane_distance(p.first, p.second);
        EXPECT_NEAR(got, want, 1e-6) << "pair " << i;
    }
}

TEST(PlaneDistance, DesignationAndMobiusInvariance) {
    SplitMix64 rng(43);
    for (int i = 0; i < 60; ++i) {
        CirclePair p = random_disjoint_pair(rng);
        double d = plane_distance_dL(p);
        EXPECT_NEAR(plane_distance_dL(p.first.flipped(), p.second.flipped()), d, 1e-12);

        MobiusMap m = compose(inversion_in_circle(oracles::random_circle(rng, 0.7)),
                              inversion_in_circle(oracles::random_circle(rng, 0.7)));
        double dm = plane_distance_dL(map_circle(m, p.first), map_circle(m, p.second));
        EXPECT_NEAR(dm, d, 1e-8 * (1 + d)) << "pair " << i;
    }
}

TEST(CanonicalPair, DisjointDisksAndUniqueness) {
    SplitMix64 rng(44);
    for (int i = 0; i < 80; ++i) {
        SphereCircle a = oracles::random_circle(rng, 0.85);
        SphereCircle b = oracles::random_circle(rng, 0.85);
        if (circles_intersect(a, b, 1e-4)) {
            EXPECT_THROW(canonical_disjoint_pair(a, b), std::runtime_error);
            continue;
        }
        CirclePair p = canonical_disjoint_pair(a, b);
        double gap = angle_between(p.first.normal, p.second.normal) -
                     p.first.cap_radius() - p.second.cap_radius();
        EXPECT_GT(gap, 0);
        int valid = 0;
        for (int fi = 0; fi < 2; ++fi)
            for (int fj = 0; fj < 2; ++fj) {
                SphereCircle u = fi ? a.flipped() : a;
                SphereCircle v = fj ? b.flipped() : b;
                if (angle_between(u.normal, v.normal) >
                    u.cap_radius() + v.cap_radius())
                    ++valid;
            }
        EXPECT_EQ(valid, 1);
    }
}

TEST(CanonicalPair, Fixture) {
    CirclePair p = canonical_disjoint_pair({{0, 0, 1}, 0}, {{0, 0, 1}, -0.8});
    EXPECT_LT(dist(p.first.normal, Vec3{0, 0, 1}), 1e-12);
    EXPECT_NEAR(p.first.offset, 0.0, 1e-12);
    EXPECT_LT(dist(p.second.normal, Vec3{0, 0, -1}), 1e-12);
    EXPECT_NEAR(p.second.offset, 0.8, 1e-12);
}

TEST(CoaxialAxis, FixtureAndMembership) {
    auto [p, q] = coaxial_axis({{0, 0, 1}, 0}, {{0, 0, 1}, -0.8});
    EXPECT_LT(dist(p, SpherePoint{0, 0, 1}), 1e-6);
    EXPECT_LT(dist(q, SpherePoint{0, 0, -1}), 1e-6);

    SplitMix64 rng(45);
    for (int i = 0; i < 60; ++i) {
        CirclePair pr = random_disjoint_pair(rng);
        auto [f1, f2] = coaxial_axis(pr.first, pr.second);
        EXPECT_TRUE(pr.first.disk_contains_point(f1));
        EXPECT_TRUE(pr.second.disk_contains_point(f2));
        // the axis endpoints are fixed by both inversions composed
        MobiusMap g = compose(inversion_in_circle(pr.second), inversion_in_circle(pr.first));
        EXPECT_LT(dist(apply(g, f1), f1), 1e-7);
        EXPECT_LT(dist(apply(g, f2), f2), 1e-7);
    }
}

TEST(Concentric, NormalizationAgreesWithDistance) {
    auto res = normalize_to_concentric({{0, 0, 1}, 0}, {{0, 0, 1}, -0.8});
    EXPECT_NEAR(2 * res.s, std::log(3.0), 1e-10);

    SplitMix64 rng(46);
    for (int i = 0; i < 50; ++i) {
        CirclePair p = random_disjoint_pair(rng);
        auto [m, s] = normalize_to_concentric(p.first, p.second);
        EXPECT_NEAR(2 * s, plane_distance_dL(p), 1e-8);

        PlaneCircle k1 = to_plane_circle(map_circle(m, p.first));
        PlaneCircle k2 = to_plane_circle(map_circle(m, p.second));
        ASSERT_FALSE(k1.is_line);
        ASSERT_FALSE(k2.is_line);
        EXPECT_LT(std::abs(k1.c), 1e-7 * (1 + k1.r));
        EXPECT_LT(std::abs(k2.c), 1e-7 * (1 + k2.r));
        double lo = std::min(k1.r, k2.r), hi = std::max(k1.r, k2.r);
        EXPECT_NEAR(lo, std::exp(-s), 1e-7);
        EXPECT_NEAR(hi, std::exp(s), 1e-7 * (1 + hi));
    }
}

TEST(GoodPosition, AcceptsAndRejects) {
    SphereCircle a = circle_from_cap({0, 0, 1}, 0.3);
    SphereCircle b = circle_from_cap({1, 0, 0}, 0.3);
    SphereCircle c = circle_from_cap({0, 0, -1}, 0.3);
    EXPECT_TRUE(good_position({a, b, c}).ok);

    auto rep = good_position({a, circle_from_cap({std::sin(0.5), 0, std::cos(0.5)}, 0.3), c});
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.reason, "circles intersect");
    EXPECT_EQ(rep.i, 0);
    EXPECT_EQ(rep.j, 1);

    // same circles, but one designated disk swallows a neighbour
    auto rep2 = good_position({a.flipped(), b, c});
    EXPECT_FALSE(rep2.ok);
    EXPECT_EQ(rep2.reason, "designated disk contains another circle");
    EXPECT_EQ(rep2.i, 0);
}
