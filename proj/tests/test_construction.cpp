#include "qfm/construction.hpp"

#include <gtest/gtest.h>

using namespace qfm;

namespace {

const CheckResult* find_check(const std::vector<CheckResult>& v, const std::string& name) {
    for (const auto& c : v)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST(Stations, CountsAndOrder) {
    for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(station_count(n), 3 * n - 1);
        EXPECT_EQ(arrangement_count(n), 1u << n);
        auto sel = selected_stations(n, 0);
        EXPECT_EQ(int(sel.size()), 2 * n - 1);
        // bit set means the band tunnel replaces the bridge tunnel
        auto sel_all = selected_stations(n, (1u << n) - 1);
        EXPECT_EQ(sel_all.size(), sel.size());
        for (int i = 0; i < n; ++i) {
            EXPECT_EQ(sel[i], bridge_station(i));
            EXPECT_EQ(sel_all[i], band_station(i));
        }
        for (int j = 1; j < n; ++j) EXPECT_EQ(sel[n + j - 1], strip_station(n, j));
    }
}

TEST(Stations, DefaultsBuildWithinBudget) {
    ThresholdEstimates th = least_area_threshold(1e-10);
    for (int n = 1; n <= 5; ++n) {
        ConstructionSpec s = default_spec(n);
        JordanCurve jc = build_jordan_curve(s.n, s.epsilon, s.bridge_width);
        auto st = build_stations(jc, s.catenoid_offset, th);
        EXPECT_EQ(int(st.size()), station_count(n));
        EXPECT_EQ(int(st.size()) * 2, 6 * n - 2);
        for (const auto& stn : st) {
            EXPECT_GT(stn.dl, 0.0);
            EXPECT_LT(stn.dl, th.d1);
        }
    }
    EXPECT_THROW(default_spec(0), std::invalid_argument);
    EXPECT_THROW(default_spec(6), std::invalid_argument);
}

TEST(Stations, InfeasibleInputsThrowWithAdvice) {
    ThresholdEstimates th = least_area_threshold(1e-10);
    // bands so tall the parallel circles collide
    EXPECT_THROW(build_jordan_curve(3, 0.6, 1e-3), std::runtime_error);
    // gap too wide relative to the flank disks: separation exceeds the bound
    JordanCurve wide = build_jordan_curve(3, 0.02, 0.01);
    try {
        build_stations(wide, 2.4e-3, th);
        FAIL() << "expected a separation failure";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("reduce"), std::string::npos);
    }
}

TEST(Loops, StayInsideTheirTerritory) {
    ConstructionSpec s = default_spec(2);
    Configuration cfg = build_configuration(s);
    ThresholdEstimates th = least_area_threshold(1e-10);
    for (int i = 0; i < int(cfg.stations.size()); ++i) {
        const auto& stn = cfg.stations[i];
        CirclePair can = canonical_disjoint_pair(stn.pair.first, stn.pair.second);
        auto sc = solve_catenoid_for_pair(can.first, can.second, th);
        ASSERT_TRUE(sc.has_value());
        auto loop = station_loop(cfg.curve, cfg.stations, i, *sc);
        ASSERT_GE(loop.size(), 100u);
        // closed up to the final hop
        EXPECT_LT(dist(loop.front(), loop.back()), 5e-3);
        double lift = 0;
        for (const Vec3& p : loop) lift = std::max(lift, norm(p) - 1);
        EXPECT_NEAR(lift, 1e-4, 1e-6);  // sphere-level traffic rides just outside
        if (stn.kind == StationKind::Strip) {
            const ZoneInfo& z = cfg.curve.zones[stn.index];
            for (const Vec3& p : loop) {
                double th_p = std::acos(std::clamp(p.z / norm(p), -1.0, 1.0));
                EXPECT_GT(th_p, z.th_lo - 1e-9);
                EXPECT_LT(th_p, z.th_hi + 1e-9);
            }
        }
    }
}

TEST(Verify, SmallestSizeIsValid) {
    PipelineResult pr = run_pipeline(default_spec(1));
    const ConstructionCertificate& cert = pr.certificate;
    EXPECT_TRUE(cert.valid);
    EXPECT_TRUE(cert.all_distinct);
    EXPECT_EQ(cert.counts.stations, 2);
    EXPECT_EQ(cert.counts.arrangements, 2u);
    EXPECT_EQ(cert.counts.genus, cert.counts.chain / 2 - 1);
    EXPECT_GT(cert.counts.cloud_points, 100000u);
    for (const auto& c : cert.global) {
        EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
        EXPECT_TRUE(std::isfinite(c.margin)) << c.name;
    }
    for (const auto& a : cert.arrangements) {
        EXPECT_TRUE(a.valid);
        for (const auto& c : a.checks) EXPECT_TRUE(std::isfinite(c.margin)) << c.name;
    }
    // one distinctness entry per unordered arrangement pair
    EXPECT_EQ(cert.distinctness.size(), 1u);
    EXPECT_EQ(std::abs(cert.distinctness[0].linking), 1);
    EXPECT_TRUE(cert.distinctness[0].opposite_sides);
}

TEST(Verify, CorruptedChainFailsChainChecks) {
    Configuration cfg = build_configuration(default_spec(1));
    // tilt one covering cap: orthogonality to its neighbors breaks
    SphereCircle& c = cfg.chain.circles[7];
    Vec3 t = normalized(cross(c.normal, Vec3{0, 0, 1}));
    c.normal = normalized(c.normal + 5e-4 * t);
    ConstructionCertificate cert = verify_configuration(cfg);
    EXPECT_FALSE(cert.valid);
    const CheckResult* chain = find_check(cert.global, "covering_chain_valid");
    ASSERT_NE(chain, nullptr);
    EXPECT_FALSE(chain->pass);
}

TEST(Verify, FlippedDesignationFailsSameSide) {
    Configuration cfg = build_configuration(default_spec(1));
    cfg.stations[bridge_station(0)].side = +1;  // bridge disks live on the minus side
    ConstructionCertificate cert = verify_configuration(cfg);
    EXPECT_FALSE(cert.valid);
    bool same_side_failed = false;
    for (const auto& a : cert.arrangements) {
        const CheckResult* c = find_check(a.checks, "same_side");
        ASSERT_NE(c, nullptr);
        if (!c->pass) same_side_failed = true;
    }
    EXPECT_TRUE(same_side_failed);
}

TEST(Verify, SyntheticSelectionDetectsLinkedPair) {
    Configuration cfg = build_configuration(default_spec(1));
    // both tunnels of band 0 together: a linked pair, never a real arrangement
    std::vector<std::vector<int>> extra = {{bridge_station(0), band_station(0)}};
    ConstructionCertificate cert = verify_configuration(cfg, extra);
    EXPECT_TRUE(cert.valid);  // synthetic reports do not gate validity
    ASSERT_EQ(cert.arrangements.size(), 3u);
    const ArrangementReport& syn = cert.arrangements.back();
    EXPECT_TRUE(syn.synthetic);
    EXPECT_FALSE(syn.valid);
    const CheckResult* nh = find_check(syn.checks, "null_homotopy");
    ASSERT_NE(nh, nullptr);
    EXPECT_FALSE(nh->pass);
    EXPECT_NE(nh->detail.find("1 linked"), std::string::npos);
}

TEST(Verify, SeparationTightensAsDisksShrink) {
    ThresholdEstimates th = least_area_threshold(1e-10);
    double prev = 0;
    for (double eps : {5e-2, 4.2e-2, 3.6e-2}) {
        JordanCurve jc = build_jordan_curve(1, eps, 2.4e-3);
        auto st = build_stations(jc, 2.4e-3, th);
        double dl = st[bridge_station(0)].dl;
        EXPECT_GT(dl, prev);  // smaller flank disks across the same gap sit farther apart
        prev = dl;
    }
    EXPECT_LT(prev, th.d1);
    // shrinking further crosses the least-area bound and is refused
    JordanCurve jc = build_jordan_curve(1, 2.5e-2, 2.4e-3);
    EXPECT_THROW(build_stations(jc, 2.4e-3, th), std::invalid_argument);
}

TEST(Sheet, PocketsOnlyUnderSelectedBridges) {
    Configuration cfg = build_configuration(default_spec(1));
    std::vector<double> bulge(cfg.stations.size(), 5e-3);
    std::vector<double> footprint(cfg.stations.size(), 0.02);
    auto with_bridge = witness_sheet(cfg.curve, cfg.stations, 0, cfg.spec.catenoid_offset,
                                     bulge, footprint);
    auto with_band = witness_sheet(cfg.curve, cfg.stations, 1, cfg.spec.catenoid_offset,
                                   bulge, footprint);
    EXPECT_GT(with_bridge.size(), with_band.size());  // pocket rings only for mask bit 0
    double deepest = 0;
    for (const Vec3& p : with_band) {
        EXPECT_LT(norm(p), 1.0);
        deepest = std::max(deepest, 1 - norm(p));
    }
    EXPECT_LT(deepest, 1e-4);  // no pockets: the whole sheet hugs the sphere
}
