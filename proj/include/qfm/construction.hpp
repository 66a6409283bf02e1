#pragma once

// Catenoid stations along the stitched band curve, arrangement enumeration,
// and the certificate checks behind the verifier. A station is a disjoint
// pair of designated spherical disks flanking one feature of the curve
// (a bridge gap, a band, or a zone strip); every selection of one station per
// band, together with all strip stations, is an "arrangement". The verifier
// re-derives every geometric object from the stored circles and emits named
// pass/fail results with margins.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfm/catenoid.hpp"
#include "qfm/chain.hpp"
#include "qfm/circle.hpp"
#include "qfm/curve.hpp"
#include "qfm/distances.hpp"
#include "qfm/geom.hpp"
#include "qfm/group.hpp"
#include "qfm/linking.hpp"

namespace qfm {

// ---------------------------------------------------------------------------
// region classification

enum class RegionSide { Plus, Minus, Covered };

inline const char* region_side_name(RegionSide s) {
    switch (s) {
        case RegionSide::Plus: return "plus";
        case RegionSide::Minus: return "minus";
        default: return "covered";
    }
}

// Classifies sphere points relative to the covered curve: Covered inside any
// chain cap, otherwise by crossing parity of a great-circle segment to a
// reference point near the north pole (which lies in the plus component).
struct SideClassifier {
    const SpherePath* path;
    const std::vector<SphereCircle>* caps;
    SphereGrid grid;
    double alpha;

    SideClassifier(const SpherePath& p, const CoverChain& ch)
        : path(&p),
          caps(&ch.circles),
          grid(std::max(2.2 * std::sin(std::min(ch.alpha, 1.2)), 1e-4)),
          alpha(ch.alpha) {
        for (int i = 0; i < int(ch.circles.size()); ++i)
            grid.insert(i, ch.circles[i].cap_center());
    }

    bool covered(Vec3 p) const {
        bool hit = false;
        grid.for_near(p, [&](int j) {
            if (!hit && dot(p, (*caps)[j].normal) >= (*caps)[j].offset) hit = true;
        });
        return hit;
    }

    RegionSide side_of(Vec3 p) const {
        if (covered(p)) return RegionSide::Covered;
        const Vec3 refs[3] = {Vec3{0, 0, 1}, normalized(Vec3{1.3e-3, 0, 1}),
                              normalized(Vec3{0, 1.7e-3, 1})};
        for (const Vec3& r : refs) {
            if (norm(cross(p, r)) < 1e-9) continue;  // antipodal or equal
            try {
                int c = segment_crossings(*path, p, r);
                return c % 2 == 0 ? RegionSide::Plus : RegionSide::Minus;
            } catch (const std::exception&) {
                // grazing contact: retry with a tilted reference
            }
        }
        throw std::runtime_error("side_of: no reference point gives a transversal segment");
    }
};

// ---------------------------------------------------------------------------
// specification and stations

struct ConstructionSpec {
    int n = 1;                      // number of bands
    double epsilon = 0.05;          // band half-thickness in height units
    double bridge_width = 2.4e-3;   // gap width at every stitch, longitude radians
    double catenoid_offset = 2.4e-3;  // clearance between station disks and the curve
    double delta = 0.02;            // required localization radius of the limit set
    double prune_tol = 3e-4;        // limit-set enumeration resolution
    int max_depth = 60;             // word-length cap for the enumeration
};

enum class StationKind { Bridge, Band, Strip };

inline const char* station_kind_name(StationKind k) {
    switch (k) {
        case StationKind::Bridge: return "bridge";
        case StationKind::Band: return "band";
        default: return "strip";
    }
}

struct CatenoidStation {
    StationKind kind = StationKind::Bridge;
    int index = 0;        // band index for bridge/band kinds, zone index for strips
    double home_lon = 0;  // longitude of the station's crossing
    CirclePair pair;      // stored circles; each normal points into its designated disk
    int side = 0;         // expected component of the designated disks: +1 plus, -1 minus
    double dl = 0;        // hyperbolic separation of the asymptotic boundary planes
};

// Station layout: band i contributes stations 2i (bridge) and 2i+1 (band);
// strip stations follow at 2n + (j - 1) for interior zones j = 1..n-1.
inline int bridge_station(int band) { return 2 * band; }
inline int band_station(int band) { return 2 * band + 1; }
inline int strip_station(int n, int zone) { return 2 * n + zone - 1; }
inline int station_count(int n) { return 3 * n - 1; }

inline uint32_t arrangement_count(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("arrangement_count: n out of range");
    return uint32_t(1) << n;
}

// Stations selected by an arrangement mask: bit i of the mask picks the band
// station of band i over its bridge station; strips are always selected.
inline std::vector<int> selected_stations(int n, uint32_t mask) {
    std::vector<int> sel;
    for (int i = 0; i < n; ++i)
        sel.push_back((mask >> i) & 1 ? band_station(i) : bridge_station(i));
    for (int j = 1; j < n; ++j) sel.push_back(strip_station(n, j));
    return sel;
}

struct Configuration {
    ConstructionSpec spec;
    JordanCurve curve;
    CoverChain chain;
    std::vector<CatenoidStation> stations;
};

// ---------------------------------------------------------------------------
// construction

inline constexpr double kStationRadiusCap = 0.62;

// Place the station disk pairs. Radii are maximal under a catenoid_offset
// clearance from the curve; throws with an actionable message whenever a pair
// cannot meet the least-area separation bound.
inline std::vector<CatenoidStation> build_stations(const JordanCurve& jc, double c0,
                                                   const ThresholdEstimates& th) {
    if (c0 <= 0) throw std::invalid_argument("catenoid_offset must be positive");
    int n = jc.n;
    double w = jc.width;
    double budget = th.d1;
    std::vector<CatenoidStation> st;

    auto cap = [](Vec3 center, double r) { return SphereCircle{center, std::cos(r)}; };
    // longitude of a flank disk center so its edge clears the gap wall by c0
    auto flank_lon = [&](double r, double sth, const char* what) {
        double s = std::sin(c0 + r) / sth;
        if (s >= 0.999)
            throw std::invalid_argument(std::string(what) +
                                        ": disks would wrap around the sphere");
        return w / 2 + std::asin(s);
    };
    auto fmt = [](double x) {
        std::ostringstream os;
        os.precision(4);
        os << x;
        return os.str();
    };

    for (int i = 0; i < n; ++i) {
        const BandInfo& b = jc.bands[i];
        double sth = std::sin(b.th_mid);

        double rb = b.half_height - c0;
        if (rb <= 5e-5)
            throw std::invalid_argument(
                "band " + std::to_string(i) +
                " leaves no room for bridge disks: reduce catenoid_offset or increase epsilon");
        double lc = flank_lon(rb, sth, "bridge station");
        CatenoidStation s;
        s.kind = StationKind::Bridge;
        s.index = i;
        s.home_lon = 0;
        s.side = -1;
        s.pair = {cap(lonlat_point(lc, b.th_mid), rb),
                  cap(lonlat_point(-lc, b.th_mid), rb)};  // east, west
        st.push_back(s);

        const ZoneInfo& za = jc.zones[i];
        const ZoneInfo& zb = jc.zones[i + 1];
        double fit = 0.8 * (std::min(b.th_top - za.th_lo, zb.th_hi - b.th_bot) / 2 - c0);
        double rc = std::min(fit, kStationRadiusCap);
        if (rc <= 5e-5)
            throw std::invalid_argument(
                "zones beside band " + std::to_string(i) +
                " leave no room for band-station disks: reduce catenoid_offset or epsilon");
        CatenoidStation c;
        c.kind = StationKind::Band;
        c.index = i;
        c.home_lon = (i % 2 == 0) ? kPi : 1.5 * kPi;  // alternate so shared zones stay clear
        c.side = +1;
        c.pair = {cap(lonlat_point(c.home_lon, b.th_top - c0 - rc), rc),
                  cap(lonlat_point(c.home_lon, b.th_bot + c0 + rc), rc)};  // upper, lower
        st.push_back(c);
    }

    for (int j = 1; j < n; ++j) {
        const ZoneInfo& z = jc.zones[j];
        double thc = 0.5 * (z.th_lo + z.th_hi);
        double sth = std::sin(thc);
        double rs = std::min(0.8 * ((z.th_hi - z.th_lo) / 2 - c0), kStationRadiusCap);
        if (rs <= 5e-5)
            throw std::invalid_argument(
                "zone " + std::to_string(j) +
                " is too thin for strip disks: reduce catenoid_offset or epsilon");
        double lp = flank_lon(rs, sth, "strip station");
        // the flank disks must stay clear of the two sandwich disks that
        // share this zone, or the solids collide
        for (int bi : {j - 1, j}) {
            const SphereCircle& sand = bi == j - 1 ? st[band_station(bi)].pair.second
                                                   : st[band_station(bi)].pair.first;
            double need = rs + sand.cap_radius() + 2 * c0;
            for (double lon : {kPi / 2 + lp, kPi / 2 - lp}) {
                double a = angle_between(lonlat_point(lon, thc), sand.normal);
                if (a < need)
                    throw std::invalid_argument(
                        "strip station in zone " + std::to_string(j) +
                        " collides with a band station disk: reduce epsilon or "
                        "catenoid_offset");
            }
        }
        CatenoidStation s;
        s.kind = StationKind::Strip;
        s.index = j;
        s.home_lon = kPi / 2;
        s.side = +1;
        s.pair = {cap(lonlat_point(kPi / 2 + lp, thc), rs),
                  cap(lonlat_point(kPi / 2 - lp, thc), rs)};  // east, west
        st.push_back(s);
    }

    for (auto& s : st) {
        CirclePair can = canonical_disjoint_pair(s.pair.first, s.pair.second);
        s.dl = plane_distance_dL(can);
        if (s.dl >= budget) {
            std::string knob = s.kind == StationKind::Bridge
                                   ? "reduce bridge_width and catenoid_offset"
                                   : "reduce epsilon or catenoid_offset";
            throw std::invalid_argument(
                std::string(station_kind_name(s.kind)) + " station " + std::to_string(s.index) +
                " has boundary separation " + fmt(s.dl) + " >= least-area bound " + fmt(budget) +
                ": " + knob);
        }
    }
    return st;
}

inline constexpr int kMaxChainDisks = 450000;

// Covering chain along the whole stitched curve. The cap radius obeys three
// budgets: the localization radius delta, staying clear of foreign arcs
// across the gaps, and staying clear of the station disks.
inline CoverChain build_covering_chain(const JordanCurve& jc, const ConstructionSpec& spec) {
    if (spec.delta <= 0) throw std::invalid_argument("delta must be positive");
    if (spec.delta > 0.5)
        throw std::invalid_argument(
            "delta too large: covering disks of this size cannot stay disjoint along the "
            "curve (use delta <= 0.5)");
    double alpha = std::min({spec.delta, 0.35 * jc.min_gap_width, 0.8 * spec.catenoid_offset});
    double len = path_length(jc.path);
    for (;;) {
        double estimate = len / (1.3 * alpha);
        if (estimate > kMaxChainDisks)
            throw std::invalid_argument(
                "covering chain would need about " + std::to_string(long(estimate)) +
                " disks (cap " + std::to_string(kMaxChainDisks) +
                "): increase delta, bridge_width, or catenoid_offset");
        CoverChain ch = cover_path(jc.path, alpha);
        if (int(ch.circles.size()) >= 6) return ch;
        alpha *= 0.75;  // tiny curves: shrink until the closed chain has enough caps
    }
}

inline Configuration build_configuration(const ConstructionSpec& spec) {
    Configuration cfg;
    cfg.spec = spec;
    cfg.curve = build_jordan_curve(spec.n, spec.epsilon, spec.bridge_width);
    ThresholdEstimates th = least_area_threshold(1e-10);
    cfg.stations = build_stations(cfg.curve, spec.catenoid_offset, th);
    cfg.chain = build_covering_chain(cfg.curve, spec);
    return cfg;
}

// ---------------------------------------------------------------------------
// tunnel loops
//
// One closed polyline per station, threading the station's catenoid tunnel
// and returning near the sphere. Sphere-level segments ride just outside the
// ball, so they provably avoid every solid, and each route stays inside its
// own band or zone, so loops of different stations never touch. Linking
// numbers of these loops witness that same-band station pairs are linked (so
// arrangements differ) while every co-selectable pair is unlinked.

namespace loop_detail {

inline double lon_of(Vec3 p) {
    double l = std::atan2(p.y, p.x);
    return l < 0 ? l + 2 * kPi : l;
}

inline double theta_of(Vec3 p) { return std::acos(std::clamp(p.z, -1.0, 1.0)); }

// constant-depth spherical segment, longitude and polar angle interpolated
// linearly; the start point is assumed already present
inline void sweep(std::vector<Vec3>& out, double lon0, double lon1, double th0, double th1,
                  double depth, double step) {
    double span = lon1 - lon0;  // signed, may wind past 2*pi
    double sth = std::max(std::sin(th0), std::sin(th1));
    double arc = std::max(std::fabs(span) * sth, std::fabs(th1 - th0));
    int m = std::max(1, int(std::ceil(arc / step)));
    for (int k = 1; k <= m; ++k) {
        double u = double(k) / m;
        out.push_back((1 - depth) * lonlat_point(lon0 + u * span, th0 + u * (th1 - th0)));
    }
}

// tunnel chord: axis samples dense where the tunnel is shallow, with exact
// ideal endpoints at both ends
inline void chord(std::vector<Vec3>& out, const SolidCatenoid& sc, bool from_first,
                  double dense_dt, double coarse_dt) {
    const double T = 9, Td = 2;
    std::vector<double> ts;
    for (double t = T; t > Td + 1e-9; t -= coarse_dt) ts.push_back(t);
    for (double t = Td; t >= -Td - 1e-9; t -= dense_dt) ts.push_back(t);
    for (double t = -Td - coarse_dt; t > -T - 1e-9; t -= coarse_dt) ts.push_back(t);
    if (!from_first) std::reverse(ts.begin(), ts.end());
    out.push_back(from_first ? sc.solution.axis.first : sc.solution.axis.second);
    for (double t : ts) out.push_back(ball_of_fermi(sc.frame, t, 0, 0));
    out.push_back(from_first ? sc.solution.axis.second : sc.solution.axis.first);
}

}  // namespace loop_detail

// Sphere-level loop traffic rides this far outside the unit sphere: strictly
// clear of every solid (solids live in the closed ball and meet the sphere
// only in the station disks) yet far inside the linking-integral resolution.
inline constexpr double kLoopLift = -1e-4;

inline std::vector<Vec3> station_loop(const JordanCurve& jc,
                                      const std::vector<CatenoidStation>& st, int idx,
                                      const SolidCatenoid& sc) {
    using namespace loop_detail;
    const CatenoidStation& s = st[idx];
    Vec3 pf = sc.solution.axis.first, ps = sc.solution.axis.second;
    std::vector<Vec3> out;

    if (s.kind == StationKind::Bridge) {
        const BandInfo& b = jc.bands[s.index];
        bool first_east = lon_of(pf) < kPi;
        Vec3 pe = first_east ? pf : ps, pw = first_east ? ps : pf;
        chord(out, sc, first_east, 0.01, 0.05);  // pe .. pw, shallow: dense middle
        double le = lon_of(pe), lw = lon_of(pw);
        sweep(out, lw, le, b.th_mid, b.th_mid, kLoopLift, 2e-3);  // the long way, through pi
        return out;                                               // closes back to pe
    }

    if (s.kind == StationKind::Band) {
        const BandInfo& b = jc.bands[s.index];
        double h = b.th_bot - b.th_top;
        double up_th = b.th_top + 0.2 * h, lo_th = b.th_bot - 0.2 * h;
        bool first_up = theta_of(pf) < theta_of(ps);
        Vec3 pu = first_up ? pf : ps, pl = first_up ? ps : pf;
        double home = s.home_lon;
        chord(out, sc, first_up, 0.05, 0.05);  // pu .. pl, deep: coarse is fine
        sweep(out, home, home, theta_of(pl), lo_th, kLoopLift, 2e-3);  // hop inside the band
        sweep(out, home, 2 * kPi, lo_th, lo_th, kLoopLift, 2e-3);      // east to the gap center
        sweep(out, 2 * kPi, 2 * kPi, lo_th, up_th, kLoopLift, 2e-4);   // over the bridge tunnel
        sweep(out, 2 * kPi, home, up_th, up_th, kLoopLift, 2e-3);      // west back home
        sweep(out, home, home, up_th, theta_of(pu), kLoopLift, 2e-3);  // hop to the endpoint
        return out;                                                    // closes back to pu
    }

    // strip: close locally over the top of the tunnel; the loop never leaves
    // its own zone, so it cannot link or touch any other station's loop
    bool first_east = lon_of(pf) > kPi / 2;
    Vec3 pe = first_east ? pf : ps, pw = first_east ? ps : pf;
    chord(out, sc, first_east, 0.05, 0.05);  // pe .. pw, deep
    sweep(out, lon_of(pw), lon_of(pe), theta_of(pw), theta_of(pe), kLoopLift, 2e-3);
    return out;  // closes back to pe with a short radial hop
}

// ---------------------------------------------------------------------------
// witness sheet

// Push-in copy of the minus component: a shell of samples at depth eta under
// the bands and strips, dimpled under the flank disks of the selected bridge
// stations so it dives below their solids. Every sample must lie outside
// every selected solid.
inline std::vector<Vec3> witness_sheet(const JordanCurve& jc,
                                       const std::vector<CatenoidStation>& st, uint32_t mask,
                                       double c0,
                                       const std::vector<double>& bulge,
                                       const std::vector<double>& footprint) {
    const double eta = 1e-6;
    struct Pocket {
        Vec3 center;
        double r1, r2, depth;
    };
    std::vector<Pocket> pockets;
    for (int i = 0; i < jc.n; ++i) {
        if ((mask >> i) & 1) continue;  // band station selected, no pocket needed
        int k = bridge_station(i);
        double r1 = footprint[k] + 0.15 * c0;
        double dp = 1.3 * bulge[k] + eta;
        pockets.push_back({st[k].pair.first.normal, r1, r1 + 0.4 * c0, dp});
        pockets.push_back({st[k].pair.second.normal, r1, r1 + 0.4 * c0, dp});
    }

    auto depth_at = [&](Vec3 p) {
        double d = eta;
        for (const Pocket& pk : pockets) {
            double s = angle_between(p, pk.center);
            if (s >= pk.r2) continue;
            double u = s <= pk.r1 ? 1.0 : (pk.r2 - s) / (pk.r2 - pk.r1);
            d = std::max(d, eta + (pk.depth - eta) * u);
        }
        return d;
    };

    std::vector<Vec3> pts;
    auto push = [&](Vec3 p) { pts.push_back((1 - depth_at(p)) * p); };

    for (int i = 0; i < jc.n; ++i) {
        const BandInfo& b = jc.bands[i];
        double th0 = b.th_top + 0.25 * c0, th1 = b.th_bot - 0.25 * c0;
        double lm = jc.width / 2 + (jc.cut + 0.3 * c0) / std::sin(b.th_mid);
        for (int r = 0; r < 7; ++r) {
            double th = th0 + (th1 - th0) * r / 6.0;
            for (int k = 0; k < 128; ++k)
                push(lonlat_point(lm + (2 * kPi - 2 * lm) * k / 127.0, th));
        }
    }
    for (int j = 1; j < jc.n; ++j) {
        const ZoneInfo& z = jc.zones[j];
        double th0 = z.th_lo + 0.3 * c0, th1 = z.th_hi - 0.3 * c0;
        for (int col = -2; col <= 2; ++col)
            for (int r = 0; r < 48; ++r)
                push(lonlat_point(kPi / 2 + col * 0.1 * jc.width,
                                  th0 + (th1 - th0) * r / 47.0));
    }
    for (const Pocket& pk : pockets) {
        Vec3 u, v;
        tangent_basis(pk.center, u, v);
        for (double fr : {0.0, 0.3, 0.6, 0.85, 1.0, 1.12}) {
            double s = fr * pk.r1;
            int m = fr == 0.0 ? 1 : 24;
            for (int k = 0; k < m; ++k) {
                double ph = 2 * kPi * k / m;
                push(std::cos(s) * pk.center +
                     std::sin(s) * (std::cos(ph) * u + std::sin(ph) * v));
            }
        }
    }
    return pts;
}

// ---------------------------------------------------------------------------
// certificate

struct CheckResult {
    std::string name;
    bool pass = false;
    double margin = 0;
    std::string detail;
};

struct ArrangementReport {
    uint32_t mask = 0;
    bool synthetic = false;  // extra selection evaluated on request, not counted
    std::vector<CheckResult> checks;
    bool valid = false;
};

struct DistinctnessEntry {
    uint32_t a = 0, b = 0;
    int band = -1;
    int linking = 0;
    bool opposite_sides = false;
    bool ok = false;
};

struct CertificateCounts {
    int stations = 0;
    int station_circles = 0;
    int chain = 0;
    int group_size = 0;
    int genus = 0;
    uint32_t arrangements = 0;
    size_t cloud_points = 0;
};

struct ConstructionCertificate {
    ConstructionSpec spec;
    ThresholdEstimates thresholds;
    std::vector<CheckResult> global;
    std::vector<ArrangementReport> arrangements;
    std::vector<DistinctnessEntry> distinctness;
    CertificateCounts counts;
    bool all_distinct = false;
    bool valid = false;
};

namespace verify_detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

inline std::vector<Vec3> decimate(const std::vector<Vec3>& v, size_t stride) {
    if (stride <= 1 || v.size() <= 3 * stride) return v;
    std::vector<Vec3> out;
    out.reserve(v.size() / stride + 1);
    for (size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
    return out;
}

// surface sample grid of a solid, denser toward the asymptotic ends
inline std::vector<Vec3> surface_samples(const SolidCatenoid& sc, int nt, int nth) {
    std::vector<Vec3> out;
    out.reserve(size_t(nt) * nth);
    double tinf = sc.solution.curve.t_inf;
    for (int i = 0; i < nt; ++i) {
        double u = -1.0 + 2.0 * (i + 0.5) / nt;
        double t = tinf * u * (0.4 + 0.6 * u * u) * (1 - 1e-9);
        for (int j = 0; j < nth; ++j)
            out.push_back(sc.surface_point(t, 2 * kPi * j / nth));
    }
    return out;
}

}  // namespace verify_detail

// Full certificate for a configuration. Never throws: any internal failure
// is recorded as a failing check. `extra_selections` evaluates additional
// (possibly illegal) station selections as synthetic arrangement reports;
// they are appended but do not count toward overall validity.
inline ConstructionCertificate verify_configuration(
    const Configuration& cfg, const std::vector<std::vector<int>>& extra_selections = {}) {
    using verify_detail::fmt;
    ConstructionCertificate cert;
    cert.spec = cfg.spec;
    const int n = cfg.spec.n;
    const auto& jc = cfg.curve;
    const auto& st = cfg.stations;
    const int ns = int(st.size());
    const double inf = std::numeric_limits<double>::infinity();

    auto guard = [](std::vector<CheckResult>& out, const std::string& name, auto&& fn) {
        CheckResult r;
        r.name = name;
        try {
            fn(r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.margin = 0;
            r.detail = std::string("error: ") + e.what();
        }
        out.push_back(r);
    };

    // shared state filled in by the checks below
    std::optional<ThresholdEstimates> th;
    try {
        th = least_area_threshold(1e-10);
        cert.thresholds = *th;
    } catch (const std::exception&) {
    }
    std::optional<SideClassifier> classifier;
    try {
        classifier.emplace(jc.path, cfg.chain);
    } catch (const std::exception&) {
    }
    std::vector<std::optional<SolidCatenoid>> solids(ns);
    std::vector<std::vector<Vec3>> loops(ns), surf(ns);
    std::vector<double> bulge(ns, 0), footprint(ns, 0);
    std::vector<std::vector<int>> link_val(ns, std::vector<int>(ns, 0));
    std::vector<std::vector<bool>> link_ok(ns, std::vector<bool>(ns, false));
    std::vector<std::vector<double>> pair_sep(ns, std::vector<double>(ns, inf));
    std::optional<InversionGroup> group;
    LimitSetCloud cloud;

    // --- global checks ------------------------------------------------------

    guard(cert.global, "configuration_shape", [&](CheckResult& r) {
        if (n < 1 || n > 20) throw std::runtime_error("band count out of range");
        if (ns != station_count(n))
            throw std::runtime_error("expected " + std::to_string(station_count(n)) +
                                     " stations, got " + std::to_string(ns));
        for (int i = 0; i < n; ++i) {
            if (st[bridge_station(i)].kind != StationKind::Bridge ||
                st[bridge_station(i)].index != i)
                throw std::runtime_error("station order broken at bridge " + std::to_string(i));
            if (st[band_station(i)].kind != StationKind::Band || st[band_station(i)].index != i)
                throw std::runtime_error("station order broken at band " + std::to_string(i));
        }
        for (int j = 1; j < n; ++j)
            if (st[strip_station(n, j)].kind != StationKind::Strip ||
                st[strip_station(n, j)].index != j)
                throw std::runtime_error("station order broken at strip " + std::to_string(j));
        double worst = 1;
        for (const auto& s : st)
            for (const SphereCircle* c : {&s.pair.first, &s.pair.second}) {
                worst = std::min(worst, 1 - std::fabs(c->offset));
                worst = std::min(worst, 1 - std::fabs(norm(c->normal) - 1) * 1e6);
            }
        if (cfg.chain.circles.size() < 6 || cfg.chain.circles.size() % 2 != 0)
            throw std::runtime_error("covering chain must have an even count of at least 6");
        r.pass = worst > 0;
        r.margin = worst;
        r.detail = std::to_string(ns) + " stations, chain of " +
                   std::to_string(cfg.chain.circles.size());
    });

    guard(cert.global, "parallel_circles_disjoint", [&](CheckResult& r) {
        auto pairs = build_parallel_circles(n, cfg.spec.epsilon);  // throws on collision
        double worst = inf;
        for (int i = 0; i < n; ++i) {
            worst = std::min(worst, jc.bands[i].th_bot - jc.bands[i].th_top);
            worst = std::min(worst, jc.zones[i].th_hi - jc.zones[i].th_lo);
        }
        worst = std::min(worst, jc.zones[n].th_hi - jc.zones[n].th_lo);
        r.pass = worst > 0 && int(pairs.size()) == n;
        r.margin = worst;
        r.detail = "narrowest band or zone, polar radians";
    });

    guard(cert.global, "jordan_curve_simple", [&](CheckResult& r) {
        SimplicityReport rep = curve_simplicity(jc.path);
        r.pass = rep.ok;
        r.margin = rep.ok ? jc.cut : 0;
        r.detail = rep.ok ? std::to_string(jc.path.arcs.size()) + " arcs, corner scale"
                          : "arcs " + std::to_string(rep.i) + " and " + std::to_string(rep.j) +
                                " intersect";
    });

    guard(cert.global, "covering_chain_valid", [&](CheckResult& r) {
        // adjacent normals are solved to orthogonality but stored as unit
        // doubles, which floors the representable cos-angle near
        // machine epsilon / alpha^2; gate at that scale
        double otol = std::clamp(5e-15 / (cfg.chain.alpha * cfg.chain.alpha), 1e-9, 1e-5);
        ChainReport rep = validate_chain(cfg.chain, jc.path, otol);
        r.pass = rep.ok;
        r.margin = std::min(rep.min_gap, rep.cover_margin);
        r.detail = rep.ok ? "orthogonality " + fmt(rep.worst_orthogonality) + " vs tol " +
                                fmt(otol) + ", min gap " + fmt(rep.min_gap) +
                                ", cover margin " + fmt(rep.cover_margin)
                          : rep.reason;
    });

    guard(cert.global, "chain_radius_within_delta", [&](CheckResult& r) {
        r.margin = cfg.spec.delta - cfg.chain.alpha;
        r.pass = r.margin > 0;
        r.detail = "cap radius " + fmt(cfg.chain.alpha) + " vs delta " + fmt(cfg.spec.delta);
    });

    guard(cert.global, "group_relations", [&](CheckResult& r) {
        group = make_inversion_group(cfg.chain.circles);
        // stored circles carry orthogonality to ~machine/alpha^2, and the
        // normalized pair products add another 1/alpha lever, so the
        // attainable pairwise defect scales like machine precision / alpha^3
        double tol = std::clamp(1e-13 / std::pow(cfg.chain.alpha, 3), 1e-9, 2e-3);
        RelationReport rep = verify_relations(*group, tol);
        // the telescoping cycle product is algebraically trivial and its
        // numerical defect grows with the partial-product condition numbers,
        // so only the pairwise relations carry geometric content here
        r.pass = rep.worst_pair <= tol;
        r.margin = r.pass ? tol - rep.worst_pair : 0;
        r.detail = "worst pairwise relation deviation " + fmt(rep.worst_pair) +
                   " vs conditioning-scaled tol " + fmt(tol);
    });

    guard(cert.global, "region_split", [&](CheckResult& r) {
        if (!classifier) throw std::runtime_error("no classifier");
        double worst = inf;
        int bad = 0, total = 0;
        auto probe = [&](Vec3 p, RegionSide want) {
            ++total;
            if (classifier->side_of(p) != want) ++bad;
            worst = std::min(worst, path_distance(jc.path, p) - cfg.chain.alpha);
        };
        probe({0, 0, 1}, RegionSide::Plus);
        probe({0, 0, -1}, RegionSide::Plus);
        for (int i = 0; i < n; ++i) {
            for (double lon : {kPi / 3, kPi, 5 * kPi / 3})
                probe(lonlat_point(lon, jc.bands[i].th_mid), RegionSide::Minus);
            probe(lonlat_point(0, jc.bands[i].th_mid), RegionSide::Plus);  // inside the gap
        }
        for (int j = 0; j <= n; ++j) {
            double thc = 0.5 * (jc.zones[j].th_lo + jc.zones[j].th_hi);
            for (double lon : {3 * kPi / 4, 7 * kPi / 4})
                probe(lonlat_point(lon, thc), RegionSide::Plus);
            if (j >= 1 && j <= n - 1)
                probe(lonlat_point(kPi / 2, thc), RegionSide::Minus);  // strip interior
        }
        r.pass = bad == 0;
        r.margin = worst;
        r.detail = std::to_string(total - bad) + "/" + std::to_string(total) +
                   " probes on their component, min clearance to curve";
    });

    guard(cert.global, "stations_clear_covering", [&](CheckResult& r) {
        double worst = inf;
        for (const auto& c : cfg.chain.circles) {
            double rc = c.cap_radius();
            Vec3 cc = c.cap_center();
            for (const auto& s : st)
                for (const SphereCircle* d : {&s.pair.first, &s.pair.second})
                    worst = std::min(worst, angle_between(cc, d->normal) - rc - d->cap_radius());
        }
        r.pass = worst > 0;
        r.margin = worst;
        r.detail = "min angular gap between station disks and covering disks";
    });

    guard(cert.global, "station_disks_clear_curve", [&](CheckResult& r) {
        double worst = inf;
        for (const auto& s : st)
            for (const SphereCircle* d : {&s.pair.first, &s.pair.second})
                worst = std::min(worst,
                                 path_distance(jc.path, d->normal) - d->cap_radius());
        r.pass = worst > 0;
        r.margin = worst;
        r.detail = "min angular clearance between station disks and the curve";
    });

    guard(cert.global, "stations_good_position", [&](CheckResult& r) {
        std::vector<SphereCircle> fam;
        for (const auto& s : st) {
            fam.push_back(s.pair.first);
            fam.push_back(s.pair.second);
        }
        GoodPositionReport rep = good_position(fam);
        double worst = inf;
        for (size_t i = 0; i < fam.size(); ++i)
            for (size_t j = i + 1; j < fam.size(); ++j)
                worst = std::min(worst, angle_between(fam[i].normal, fam[j].normal) -
                                            fam[i].cap_radius() - fam[j].cap_radius());
        r.pass = rep.ok;
        r.margin = rep.ok ? worst : 0;
        r.detail = rep.ok ? "pairwise disjoint designated disks, min angular gap"
                          : rep.reason + " (circles " + std::to_string(rep.i) + ", " +
                                std::to_string(rep.j) + ")";
    });

    guard(cert.global, "station_distance_thresholds", [&](CheckResult& r) {
        if (!th) throw std::runtime_error("threshold estimates unavailable");
        double worst_dl = 0, worst_mismatch = 0;
        for (const auto& s : st) {
            CirclePair can = canonical_disjoint_pair(s.pair.first, s.pair.second);
            double d = plane_distance_dL(can);
            worst_dl = std::max(worst_dl, d);
            worst_mismatch = std::max(worst_mismatch, std::fabs(d - s.dl));
            if (d <= 0) throw std::runtime_error("nonpositive separation");
        }
        r.pass = worst_dl < th->d1 && worst_mismatch < 1e-9;
        r.margin = th->d1 - worst_dl;
        r.detail = "max separation " + fmt(worst_dl) + " vs least-area bound " + fmt(th->d1) +
                   ", stored mismatch " + fmt(worst_mismatch);
    });

    guard(cert.global, "catenoid_solutions", [&](CheckResult& r) {
        if (!th) throw std::runtime_error("threshold estimates unavailable");
        double worst_res = 0, worst_deficit = 0;
        for (int i = 0; i < ns; ++i) {
            CirclePair can = canonical_disjoint_pair(st[i].pair.first, st[i].pair.second);
            auto sc = solve_catenoid_for_pair(can.first, can.second, *th);
            if (!sc)
                throw std::runtime_error("no catenoid for station " + std::to_string(i));
            if (sc->solution.area_deficit >= 0)
                throw std::runtime_error("station " + std::to_string(i) +
                                         " solution is not on the least-area branch");
            worst_deficit = std::max(worst_deficit, sc->solution.area_deficit);
            worst_res = std::max(worst_res, mean_curvature_residual(sc->solution.curve));
            solids[i] = std::move(sc);
        }
        r.pass = worst_res < 1e-5;
        r.margin = 1e-5 - worst_res;
        r.detail = "max curvature residual " + fmt(worst_res) + ", max area deficit " +
                   fmt(worst_deficit);
    });

    guard(cert.global, "station_pairs_linked", [&](CheckResult& r) {
        for (int i = 0; i < ns; ++i) {
            if (!solids[i]) throw std::runtime_error("missing solid for a station");
            loops[i] = station_loop(jc, st, i, *solids[i]);
        }
        double worst_sep = inf;
        std::string vals;
        for (int i = 0; i < ns; ++i)
            for (int j = i + 1; j < ns; ++j) {
                bool same_band = st[i].kind != StationKind::Strip &&
                                 st[j].kind != StationKind::Strip && st[i].index == st[j].index;
                LinkingResult lr =
                    same_band ? linking_number(loops[i], loops[j])
                              : linking_number(verify_detail::decimate(loops[i], 8),
                                               verify_detail::decimate(loops[j], 8));
                link_val[i][j] = link_val[j][i] = lr.value;
                link_ok[i][j] = link_ok[j][i] = std::fabs(lr.raw - lr.value) < 0.05;
                if (same_band) {
                    worst_sep = std::min(worst_sep, lr.separation);
                    vals += (vals.empty() ? "" : ", ") + std::to_string(lr.value);
                }
            }
        bool pass = true;
        for (int i = 0; i < n; ++i) {
            int b = bridge_station(i), c = band_station(i);
            if (std::abs(link_val[b][c]) != 1 || !link_ok[b][c]) pass = false;
        }
        // every loop must stay clear of each solid it can be co-selected
        // with; segments outside the closed ball are clear by construction
        double worst_clear = inf;
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j) {
                if (i == j) continue;
                bool same_band = st[i].kind != StationKind::Strip &&
                                 st[j].kind != StationKind::Strip &&
                                 st[i].index == st[j].index;
                if (same_band) continue;  // never co-selected
                for (const Vec3& x : loops[i])
                    if (norm(x) < 1)
                        worst_clear = std::min(worst_clear, -solids[j]->depth(x));
            }
        r.pass = pass && worst_clear > 0;
        r.margin = r.pass ? std::min({worst_sep, worst_clear, 1e3}) : 0;
        r.detail = "same-band linking numbers [" + vals + "], min loop separation " +
                   fmt(worst_sep) + ", min clearance to co-selectable solids " +
                   fmt(worst_clear);
    });

    guard(cert.global, "surface_separation", [&](CheckResult& r) {
        double worst_chain = inf, worst_pairwise = inf;
        for (int i = 0; i < ns; ++i) {
            if (!solids[i]) throw std::runtime_error("missing solid for a station");
            surf[i] = verify_detail::surface_samples(*solids[i], 110, 72);
            // footprint and bulge feed the witness-sheet pockets
            Vec3 c1 = st[i].pair.first.normal, c2 = st[i].pair.second.normal;
            for (const Vec3& x : surf[i]) {
                double rr = norm(x);
                bulge[i] = std::max(bulge[i], 1 - rr);
                Vec3 p = (1.0 / rr) * x;
                footprint[i] = std::max(footprint[i], std::min(angle_between(p, c1),
                                                               angle_between(p, c2)));
            }
        }
        if (classifier) {
            for (int i = 0; i < ns; ++i)
                for (const Vec3& x : surf[i]) {
                    double rr = norm(x);
                    Vec3 p = (1.0 / rr) * x;
                    MinkV X = lift_ball(x);
                    classifier->grid.for_near(p, [&](int j) {
                        const SphereCircle& c = (*classifier->caps)[j];
                        double m = mdot(X, plane_spacelike_normal(c));
                        worst_chain = std::min(worst_chain, std::asinh(m));
                    });
                }
        } else {
            throw std::runtime_error("no classifier grid for the covering chain");
        }
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j) {
                if (i == j) continue;
                double m = inf;
                for (const Vec3& x : surf[i]) m = std::min(m, -solids[j]->depth(x));
                pair_sep[i][j] = std::min(m, pair_sep[i][j]);
                pair_sep[j][i] = pair_sep[i][j];
                worst_pairwise = std::min(worst_pairwise, m);
            }
        r.pass = worst_chain > 0 && worst_pairwise > 0;
        r.margin = std::min(worst_chain, worst_pairwise);
        r.detail = "min hyperbolic clearance to covering half-spaces " + fmt(worst_chain) +
                   ", min pairwise solid clearance " + fmt(worst_pairwise);
    });

    guard(cert.global, "limit_set_contained", [&](CheckResult& r) {
        if (!group) throw std::runtime_error("group unavailable");
        LimitSetParams P;
        // enumerate below the cap scale so the word tree actually branches;
        // the requested resolution still applies when it is the finer one
        P.prune_tol = std::min(cfg.spec.prune_tol, 0.6 * cfg.chain.alpha);
        P.max_depth = cfg.spec.max_depth;
        cloud = limit_set(*group, P);
        if (cloud.points.empty()) throw std::runtime_error("empty limit-set cloud");
        if (cloud.truncated) throw std::runtime_error("limit-set enumeration truncated");
        BandReport rep = band_containment(*group, cloud.points);
        r.pass = rep.ok;
        r.margin = rep.min_margin;
        r.detail = std::to_string(cloud.points.size()) + " points, min containment margin " +
                   fmt(rep.min_margin);
    });

    guard(cert.global, "limit_set_within_delta", [&](CheckResult& r) {
        if (cloud.points.empty()) throw std::runtime_error("no cloud");
        double worst = 0;
        for (const Vec3& p : cloud.points) worst = std::max(worst, path_distance(jc.path, p));
        // every true limit point lies within the cloud resolution of a point
        r.margin = cfg.spec.delta - worst - cloud.prune_tol;
        r.pass = r.margin > 0;
        r.detail = "max cloud distance from the curve " + fmt(worst) + " plus resolution " +
                   fmt(cloud.prune_tol) + " vs delta " + fmt(cfg.spec.delta);
    });

    guard(cert.global, "limit_set_incidence", [&](CheckResult& r) {
        if (cloud.points.empty()) throw std::runtime_error("no cloud");
        // anchor points that provably accumulate: both fixed points of the
        // loxodromic product of inversions in each distance-two cap pair.
        // Every anchor must have a cloud point within the emission radius
        // (prune_tol) plus the dedup cell diagonal (sqrt(3)/4 prune_tol).
        double bound = 1.5 * cloud.prune_tol;
        double cell = std::max(2.2 * bound, 1e-5);
        SphereGrid grid(cell);
        for (int i = 0; i < int(cloud.points.size()); ++i) grid.insert(i, cloud.points[i]);
        int m = int(cfg.chain.circles.size());
        double worst = 0;
        for (int i = 0; i < m; ++i) {
            PairProduct pp = classify_pair_product(cfg.chain.circles[i],
                                                   cfg.chain.circles[(i + 2) % m]);
            if (pp.type != ProductType::Loxodromic)
                throw std::runtime_error("distance-two pair product is not loxodromic");
            for (const PlanePoint* f : {&pp.fixed1, &pp.fixed2}) {
                Vec3 p = to_sphere(*f);
                double best = 1.1 * bound;
                grid.for_near(p, [&](int k) { best = std::min(best, dist(p, cloud.points[k])); });
                worst = std::max(worst, best);
            }
        }
        r.margin = bound - worst;
        r.pass = worst <= bound;
        r.detail = "max gap between " + std::to_string(2 * m) +
                   " loxodromic fixed points and the cloud " + fmt(worst) + " vs bound " +
                   fmt(bound);
    });

    guard(cert.global, "limit_set_clear_of_stations", [&](CheckResult& r) {
        if (cloud.points.empty()) throw std::runtime_error("no cloud");
        double worst = inf;
        for (const Vec3& p : cloud.points)
            for (const auto& s : st)
                for (const SphereCircle* d : {&s.pair.first, &s.pair.second})
                    worst = std::min(worst, angle_between(p, d->normal) - d->cap_radius());
        r.pass = worst > 0;
        r.margin = worst;
        r.detail = "min angular clearance between the cloud and station disks";
    });

    // --- per-arrangement checks ---------------------------------------------

    auto arrangement_report = [&](uint32_t mask, const std::vector<int>& sel,
                                  bool synthetic) {
        ArrangementReport rep;
        rep.mask = mask;
        rep.synthetic = synthetic;

        guard(rep.checks, "same_side", [&](CheckResult& r) {
            if (!classifier) throw std::runtime_error("no classifier");
            double worst = inf;
            int bad = 0;
            for (int k : sel) {
                RegionSide want = st[k].side > 0 ? RegionSide::Plus : RegionSide::Minus;
                for (const SphereCircle* d : {&st[k].pair.first, &st[k].pair.second}) {
                    double rr = 0.8 * d->cap_radius();
                    Vec3 u, v;
                    tangent_basis(d->normal, u, v);
                    for (int q = 0; q < 9; ++q) {
                        Vec3 p = d->normal;
                        if (q > 0) {
                            double ph = 2 * kPi * (q - 1) / 8;
                            p = std::cos(rr) * d->normal +
                                std::sin(rr) * (std::cos(ph) * u + std::sin(ph) * v);
                        }
                        if (classifier->side_of(p) != want) ++bad;
                        worst = std::min(worst, path_distance(jc.path, p) - cfg.chain.alpha);
                    }
                }
            }
            r.pass = bad == 0;
            r.margin = worst;
            r.detail = bad == 0 ? "all disk probes on the expected component"
                                : std::to_string(bad) + " probes off their component";
        });

        guard(rep.checks, "good_position", [&](CheckResult& r) {
            std::vector<SphereCircle> fam;
            for (int k : sel) {
                fam.push_back(st[k].pair.first);
                fam.push_back(st[k].pair.second);
            }
            GoodPositionReport g = good_position(fam);
            double worst = inf;
            for (size_t i = 0; i < fam.size(); ++i)
                for (size_t j = i + 1; j < fam.size(); ++j)
                    worst = std::min(worst, angle_between(fam[i].normal, fam[j].normal) -
                                                fam[i].cap_radius() - fam[j].cap_radius());
            r.pass = g.ok;
            r.margin = g.ok ? worst : 0;
            r.detail = g.ok ? "selected disks pairwise disjoint" : g.reason;
        });

        guard(rep.checks, "distance_threshold", [&](CheckResult& r) {
            if (!th) throw std::runtime_error("threshold estimates unavailable");
            double worst = 0;
            for (int k : sel) worst = std::max(worst, st[k].dl);
            r.margin = th->d1 - worst;
            r.pass = r.margin > 0;
            r.detail = "max selected separation " + fmt(worst);
        });

        guard(rep.checks, "null_homotopy", [&](CheckResult& r) {
            int linked = 0;
            for (size_t a = 0; a < sel.size(); ++a)
                for (size_t b = a + 1; b < sel.size(); ++b) {
                    if (!link_ok[sel[a]][sel[b]])
                        throw std::runtime_error("linking matrix unavailable");
                    if (link_val[sel[a]][sel[b]] != 0) ++linked;
                }
            auto sheet = witness_sheet(jc, st, mask, cfg.spec.catenoid_offset, bulge,
                                       footprint);
            double worst = inf;
            for (int k : sel) {
                if (!solids[k]) throw std::runtime_error("missing solid");
                for (const Vec3& x : sheet) worst = std::min(worst, -solids[k]->depth(x));
            }
            r.pass = linked == 0 && worst > 0;
            r.margin = linked == 0 ? std::min(worst, 1e3) : 0;
            r.detail = std::to_string(linked) + " linked tunnel pairs, sheet of " +
                       std::to_string(sheet.size()) + " samples, min clearance " + fmt(worst);
        });

        guard(rep.checks, "separation", [&](CheckResult& r) {
            double worst = inf;
            for (size_t a = 0; a < sel.size(); ++a)
                for (size_t b = a + 1; b < sel.size(); ++b)
                    worst = std::min(worst, pair_sep[sel[a]][sel[b]]);
            r.pass = worst > 0;
            r.margin = std::min(worst, 1e3);
            r.detail = "min pairwise clearance among selected solids";
        });

        rep.valid = true;
        for (const auto& c : rep.checks) rep.valid = rep.valid && c.pass;
        return rep;
    };

    uint32_t na = arrangement_count(n);
    for (uint32_t mask = 0; mask < na; ++mask)
        cert.arrangements.push_back(arrangement_report(mask, selected_stations(n, mask), false));
    for (const auto& sel : extra_selections)
        cert.arrangements.push_back(arrangement_report(0xffffffffu, sel, true));

    // --- distinctness --------------------------------------------------------

    cert.all_distinct = true;
    for (uint32_t a = 0; a < na; ++a)
        for (uint32_t b = a + 1; b < na; ++b) {
            DistinctnessEntry e;
            e.a = a;
            e.b = b;
            uint32_t diff = a ^ b;
            e.band = 0;
            while (!((diff >> e.band) & 1)) ++e.band;
            int i = bridge_station(e.band), j = band_station(e.band);
            e.linking = link_val[i][j];
            e.opposite_sides = st[i].side * st[j].side < 0;
            e.ok = link_ok[i][j] && std::abs(e.linking) == 1 && e.opposite_sides;
            cert.all_distinct = cert.all_distinct && e.ok;
            cert.distinctness.push_back(e);
        }

    cert.counts.stations = ns;
    cert.counts.station_circles = 2 * ns;
    cert.counts.chain = int(cfg.chain.circles.size());
    cert.counts.group_size = group ? group->size() : 0;
    cert.counts.arrangements = na;
    cert.counts.cloud_points = cloud.points.size();
    try {
        cert.counts.genus = chain_genus(int(cfg.chain.circles.size()));
    } catch (const std::exception&) {
        cert.counts.genus = -1;
    }

    cert.valid = cert.all_distinct;
    for (const auto& c : cert.global) cert.valid = cert.valid && c.pass;
    for (const auto& a : cert.arrangements)
        if (!a.synthetic) cert.valid = cert.valid && a.valid;
    return cert;
}

struct PipelineResult {
    Configuration config;
    ConstructionCertificate certificate;
};

inline PipelineResult run_pipeline(const ConstructionSpec& spec) {
    PipelineResult r{build_configuration(spec), {}};
    r.certificate = verify_configuration(r.config);
    return r;
}

// Parameter sets found by the feasibility search: the largest geometry per
// band count whose full certificate verifies end to end. Mirrored in
// data/defaults.json; a test asserts the two stay in sync.
inline ConstructionSpec default_spec(int n) {
    ConstructionSpec s;
    s.n = n;
    s.delta = 0.02;
    switch (n) {
        case 1:
            s.epsilon = 5.0e-2;
            s.bridge_width = 2.4e-3;
            s.catenoid_offset = 2.4e-3;
            s.prune_tol = 3.0e-4;
            break;
        case 2:
            s.epsilon = 1.8e-2;
            s.bridge_width = 9.0e-4;
            s.catenoid_offset = 9.0e-4;
            s.prune_tol = 3.0e-4;
            break;
        case 3:
            s.epsilon = 1.5e-2;
            s.bridge_width = 8.0e-4;
            s.catenoid_offset = 8.0e-4;
            s.prune_tol = 3.0e-4;
            break;
        case 4:
            s.epsilon = 1.15e-2;
            s.bridge_width = 9.0e-4;
            s.catenoid_offset = 4.0e-4;
            s.prune_tol = 3.0e-4;
            break;
        case 5:
            s.epsilon = 9.7e-3;
            s.bridge_width = 7.0e-4;
            s.catenoid_offset = 3.5e-4;
            s.prune_tol = 3.0e-4;
            break;
        default:
            throw std::invalid_argument("no stored defaults for n = " + std::to_string(n) +
                                        " (1 <= n <= 5)");
    }
    return s;
}

}  // namespace qfm
