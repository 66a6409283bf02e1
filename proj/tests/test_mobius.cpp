#include "qfm/mobius.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qfm;

namespace {

MobiusMap random_word(SplitMix64& rng, int letters) {
    MobiusMap m = MobiusMap::identity();
    for (int i = 0; i < letters; ++i)
        m = compose(m, inversion_in_circle(oracles::random_circle(rng, 0.8)));
    return m;
}

}  // namespace

TEST(CrossRatio, Fixtures) {
    auto cr = [](Complex a, Complex b, Complex c, Complex d) {
        return cross_ratio(PlanePoint::of(a), PlanePoint::of(b), PlanePoint::of(c),
                           PlanePoint::of(d));
    };
    EXPECT_NEAR(std::abs(cr({-1, 0}, {-1.0 / 3, 0}, {1.0 / 3, 0}, {1, 0}) - Complex{4, 0}),
                0.0, 1e-13);
    Complex t{0.37, 0};
    EXPECT_NEAR(std::abs(cross_ratio(PlanePoint::of({0, 0}), PlanePoint::of({1, 0}),
                                     PlanePoint::of(t), PlanePoint::inf()) -
                         t),
                0.0, 1e-13);
    EXPECT_NEAR(std::abs(cross_ratio(PlanePoint::of({0, 0}), PlanePoint::of({-1, 0}),
                                     PlanePoint::of({1, 0}), PlanePoint::inf()) -
                         Complex{-1, 0}),
                0.0, 1e-13);
}

TEST(CrossRatio, InfinityBranchesMatchLimits) {
    SplitMix64 rng(21);
    Complex big{3e8, -2e8};
    for (int i = 0; i < 20; ++i) {
        Complex z[3];
        for (auto& zz : z) zz = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
        PlanePoint p[3] = {PlanePoint::of(z[0]), PlanePoint::of(z[1]), PlanePoint::of(z[2])};
        PlanePoint far = PlanePoint::of(big);

        EXPECT_LT(std::abs(cross_ratio(PlanePoint::inf(), p[0], p[1], p[2]) -
                           cross_ratio(far, p[0], p[1], p[2])),
                  1e-6);
        EXPECT_LT(std::abs(cross_ratio(p[0], PlanePoint::inf(), p[1], p[2]) -
                           cross_ratio(p[0], far, p[1], p[2])),
                  1e-6);
        EXPECT_LT(std::abs(cross_ratio(p[0], p[1], PlanePoint::inf(), p[2]) -
                           cross_ratio(p[0], p[1], far, p[2])),
                  1e-6);
        EXPECT_LT(std::abs(cross_ratio(p[0], p[1], p[2], PlanePoint::inf()) -
                           cross_ratio(p[0], p[1], p[2], far)),
                  1e-6);
    }
}

TEST(CrossRatio, MobiusInvariant) {
    SplitMix64 rng(22);
    for (int i = 0; i < 40; ++i) {
        PlanePoint z[4];
        for (auto& p : z) p = PlanePoint::of({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        MobiusMap m = random_word(rng, 2);  // orientation preserving
        Complex before = cross_ratio(z[0], z[1], z[2], z[3]);
        Complex after = cross_ratio(apply(m, z[0]), apply(m, z[1]), apply(m, z[2]),
                                    apply(m, z[3]));
        EXPECT_LT(std::abs(before - after), 1e-8 * (1 + std::abs(before)));
    }
}

TEST(Inversion, UnitCircleAndLine) {
    // equator: z -> 1/conj(z)
    MobiusMap eq = inversion_in_circle(SphereCircle{{0, 0, 1}, 0});
    EXPECT_EQ(eq.orientation, Orientation::Reversing);
    PlanePoint im = apply(eq, PlanePoint::of({2, 0}));
    EXPECT_LT(std::abs(im.z - Complex{0.5, 0}), 1e-13);
    im = apply(eq, PlanePoint::of({0, 2}));
    EXPECT_LT(std::abs(im.z - Complex{0, 0.5}), 1e-13);

    // a great circle through the pole maps to a line in the chart
    MobiusMap ln = inversion_in_circle(SphereCircle{{0, 1, 0}, 0});
    im = apply(ln, PlanePoint::of({0.3, 0.7}));
    EXPECT_LT(std::abs(im.z - Complex{0.3, -0.7}), 1e-12);
}

TEST(Inversion, FixesItsCircleAndInvolutes) {
    SplitMix64 rng(23);
    for (int i = 0; i < 50; ++i) {
        SphereCircle c = oracles::random_circle(rng, 0.85);
        MobiusMap f = inversion_in_circle(c);
        EXPECT_EQ(f.orientation, Orientation::Reversing);
        for (double t : {0.0, 1.1, 2.9, 4.4}) {
            SpherePoint p = circle_point(c, t);
            EXPECT_LT(dist(apply(f, p), p), 1e-9);
        }
        EXPECT_LT(identity_defect(compose(f, f)), 1e-12);
        // swaps the designated side with the other side
        SpherePoint inside = c.cap_center();
        EXPECT_FALSE(c.disk_contains_point(apply(f, inside)));
    }
}

TEST(Mobius, InverseAndCompose) {
    SplitMix64 rng(24);
    for (int i = 0; i < 50; ++i) {
        MobiusMap m = random_word(rng, 1 + int(rng.uniform(0, 4.99)));
        EXPECT_LT(identity_defect(compose(m, inverse(m))), 1e-10);
        EXPECT_LT(identity_defect(compose(inverse(m), m)), 1e-10);
        EXPECT_NEAR(std::abs(m.det()), 1.0, 1e-10);  // normalized composition

        // composition acts by composition on points
        MobiusMap g = random_word(rng, 2);
        PlanePoint z = PlanePoint::of({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        PlanePoint lhs = apply(compose(g, m), z);
        PlanePoint rhs = apply(g, apply(m, z));
        EXPECT_TRUE(approx(lhs, rhs, 1e-8));
    }
}

TEST(Mobius, SpherePointAction) {
    SplitMix64 rng(25);
    for (int i = 0; i < 30; ++i) {
        SphereCircle c = oracles::random_circle(rng, 0.8);
        MobiusMap f = inversion_in_circle(c);
        SpherePoint p = oracles::random_point(rng);
        SpherePoint q = apply(f, p);
        EXPECT_NEAR(norm(q), 1.0, 1e-12);
        EXPECT_LT(dist(apply(f, q), p), 1e-9);
    }
}

TEST(MapCircle, ImageContainsMappedPoints) {
    SplitMix64 rng(26);
    for (int i = 0; i < 40; ++i) {
        SphereCircle c = oracles::random_circle(rng, 0.8);
        MobiusMap m = random_word(rng, 1 + int(rng.uniform(0, 2.99)));
        SphereCircle d = map_circle(m, c);
        for (double t : {0.4, 1.7, 3.0, 5.2}) {
            SpherePoint q = apply(m, circle_point(c, t));
            EXPECT_LT(std::fabs(dot(d.normal, q) - d.offset), 1e-9);
        }
        // designated side follows along
        SpherePoint inner = apply(m, c.cap_center());
        EXPECT_TRUE(d.disk_contains_point(inner));
    }
}

TEST(PairProduct, DisjointIsLoxodromicWithFixedPoints) {
    SplitMix64 rng(27);
    int found = 0;
    for (int i = 0; i < 200 && found < 40; ++i) {
        SphereCircle c1 = oracles::random_circle(rng, 0.8);
        SphereCircle c2 = oracles::random_circle(rng, 0.8);
        if (circles_intersect(c1, c2, 1e-6)) continue;
        ++found;
        PairProduct pp = classify_pair_product(c1, c2);
        EXPECT_EQ(pp.type, ProductType::Loxodromic);
        for (PlanePoint f : {pp.fixed1, pp.fixed2}) {
            SpherePoint fs = to_sphere(f);
            EXPECT_LT(dist(apply(pp.g, fs), fs), 1e-8);
        }
    }
    EXPECT_GE(found, 20);
}

TEST(PairProduct, OrthogonalIsInvolutionAndCommutes) {
    // two great circles at a right angle
    SphereCircle c1{{0, 0, 1}, 0}, c2{{1, 0, 0}, 0};
    EXPECT_NEAR(circle_cos_angle(c1, c2), 0.0, 1e-15);
    PairProduct pp = classify_pair_product(c1, c2);
    EXPECT_EQ(pp.type, ProductType::EllipticOrder2);
    EXPECT_LT(identity_defect(compose(pp.g, pp.g)), 1e-12);

    // small orthogonal caps: cos(gamma) = cos(a1) cos(a2)
    double a1 = 0.4, a2 = 0.55;
    double gamma = std::acos(std::cos(a1) * std::cos(a2));
    SphereCircle d1 = circle_from_cap({0, 0, 1}, a1);
    SphereCircle d2 = circle_from_cap({std::sin(gamma), 0, std::cos(gamma)}, a2);
    EXPECT_NEAR(circle_cos_angle(d1, d2), 0.0, 1e-12);
    PairProduct qq = classify_pair_product(d1, d2);
    EXPECT_EQ(qq.type, ProductType::EllipticOrder2);
    EXPECT_LT(identity_defect(compose(qq.g, qq.g)), 1e-10);

    MobiusMap f1 = inversion_in_circle(d1), f2 = inversion_in_circle(d2);
    MobiusMap lhs = compose(f1, f2), rhs = compose(f2, f1);
    SplitMix64 rng(28);
    for (int i = 0; i < 100; ++i) {
        SpherePoint p = oracles::random_point(rng);
        EXPECT_LT(dist(apply(lhs, p), apply(rhs, p)), 1e-10);
    }
}

TEST(PairProduct, TangentIsParabolic) {
    double a1 = 0.5, a2 = 0.7;
    SphereCircle c1 = circle_from_cap({0, 0, 1}, a1);
    double g = a1 + a2;  // externally tangent
    SphereCircle c2 = circle_from_cap({std::sin(g), 0, std::cos(g)}, a2);
    PairProduct pp = classify_pair_product(c1, c2, 1e-7);
    EXPECT_EQ(pp.type, ProductType::Parabolic);
    // fixed point at the tangency
    SpherePoint tangency{std::sin(a1), 0, std::cos(a1)};
    EXPECT_LT(dist(to_sphere(pp.fixed1), tangency), 1e-4);
}

TEST(Mobius, IdentityDefectScale) {
    EXPECT_NEAR(identity_defect(MobiusMap::identity()), 0.0, 1e-15);
    MobiusMap m = MobiusMap::identity();
    m.b = {1e-7, 0};
    EXPECT_NEAR(identity_defect(m), 1e-7, 1e-9);
}
