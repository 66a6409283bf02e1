#include "qfm/linking.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qfm;

namespace {

double brute_segment_pair(Vec3 p1, Vec3 p2, Vec3 q1, Vec3 q2, int m) {
    Vec3 u = p2 - p1, v = q2 - q1;
    Vec3 w = cross(u, v);
    double s = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vec3 x = p1 + ((i + 0.5) / m) * u;
            Vec3 y = q1 + ((j + 0.5) / m) * v;
            Vec3 r = x - y;
            double rn = norm(r);
            s += dot(w, r) / (rn * rn * rn);
        }
    return s / (m * double(m));
}

std::vector<Vec3> torus_curve(double tube, int windings, int n) {
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) {
        double t = 2 * kPi * i / n;
        double rad = 1 + tube * std::cos(windings * t);
        pts.push_back({rad * std::cos(t), rad * std::sin(t), tube * std::sin(windings * t)});
    }
    return pts;
}

}  // namespace

TEST(SegmentPair, ClosedFormMatchesQuadrature) {
    SplitMix64 rng(0x11aa22);
    auto rv = [&]() {
        return Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    };
    for (int k = 0; k < 8; ++k) {
        double shift = k < 4 ? 2.0 : 0.8;
        Vec3 p1 = rv(), p2 = rv();
        Vec3 q1 = rv() + Vec3{shift, 0, 0}, q2 = rv() + Vec3{shift, 0, 0};
        double cf = gauss_segment_pair(p1, p2, q1, q2);
        double bq = brute_segment_pair(p1, p2, q1, q2, 600);
        EXPECT_NEAR(cf, bq, 2e-5) << "pair " << k;
    }
}

TEST(LinkingNumber, HopfPairIsMinusOne) {
    for (int n : {16, 64, 256}) {
        LinkingResult lk = linking_number(oracles::hopf_loop_a(n), oracles::hopf_loop_b(n));
        EXPECT_EQ(lk.value, -1) << "n=" << n;
        EXPECT_NEAR(lk.raw, -1.0, 1e-10) << "n=" << n;
        EXPECT_LT(std::fabs(lk.raw - lk.value), 0.1);
    }
}

TEST(LinkingNumber, SwapAndReversalSymmetries) {
    std::vector<Vec3> a = oracles::hopf_loop_a(48), b = oracles::hopf_loop_b(48);
    EXPECT_NEAR(linking_number(b, a).raw, linking_number(a, b).raw, 1e-12);
    std::vector<Vec3> brev(b.rbegin(), b.rend());
    EXPECT_NEAR(linking_number(a, brev).raw, -linking_number(a, b).raw, 1e-12);
    EXPECT_EQ(linking_number(a, brev).value, 1);
}

TEST(LinkingNumber, DoubleWindLinksTwice) {
    std::vector<Vec3> core = oracles::hopf_loop_a(64);
    // (1,2) curve on the torus around the core: two meridian windings
    LinkingResult lk = linking_number(core, torus_curve(0.4, 2, 128));
    EXPECT_EQ(lk.value, -2);
    EXPECT_NEAR(lk.raw, -2.0, 1e-10);
}

TEST(LinkingNumber, FarApartLoopsAreUnlinked) {
    std::vector<Vec3> a{{0, 0, 0}, {0.2, 0, 0}, {0, 0.2, 0}};
    std::vector<Vec3> b{{50, 0, 1}, {50.2, 0, 1}, {50, 0, 1.2}};
    LinkingResult lk = linking_number(a, b);
    EXPECT_EQ(lk.value, 0);
    EXPECT_LT(std::fabs(lk.raw), 1e-6);
    EXPECT_NEAR(lk.separation, std::sqrt(50 * 50 + 1) - 0.2, 0.05);
}

TEST(LinkingNumber, SubdivisionInvariance) {
    std::vector<Vec3> a = oracles::hopf_loop_a(32), b = oracles::hopf_loop_b(32);
    double base = linking_number(a, b).raw;
    // split every edge of a at its midpoint: same polygon, finer vertex list
    std::vector<Vec3> fine;
    for (size_t i = 0; i < a.size(); ++i) {
        fine.push_back(a[i]);
        fine.push_back(0.5 * (a[i] + a[(i + 1) % a.size()]));
    }
    EXPECT_NEAR(linking_number(fine, b).raw, base, 1e-12);
    // a duplicated vertex (degenerate edge) must not poison the sum
    std::vector<Vec3> dup = a;
    dup.insert(dup.begin() + 5, a[5]);
    EXPECT_NEAR(linking_number(dup, b).raw, base, 1e-12);
}

TEST(LinkingNumber, SeparationGuard) {
    std::vector<Vec3> a = oracles::hopf_loop_a(64);
    std::vector<Vec3> lifted;
    for (Vec3 p : a) lifted.push_back(p + Vec3{0, 0, 3e-7});
    EXPECT_THROW(linking_number(a, lifted), std::runtime_error);
    EXPECT_NO_THROW(linking_number(a, lifted, 1e-8));

    std::vector<Vec3> parallel;
    for (Vec3 p : a) parallel.push_back(p + Vec3{0, 0, 0.25});
    LinkingResult lk = linking_number(a, parallel);
    EXPECT_NEAR(lk.separation, 0.25, 1e-12);
    EXPECT_EQ(lk.value, 0);

    EXPECT_THROW(linking_number({{0, 0, 0}, {1, 0, 0}}, a), std::runtime_error);
}
