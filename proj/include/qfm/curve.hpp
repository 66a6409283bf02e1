#pragma once
// Latitude-band Jordan curves: stacked parallel circle pairs cut open at two
// longitudes and rejoined through meridian bridges, giving one closed curve.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfm/chain.hpp"
#include "qfm/circle.hpp"
#include "qfm/geom.hpp"

namespace qfm {

struct BandInfo {
    double z = 0;            // center-plane height
    double z_top = 0, z_bot = 0;
    double th_top = 0, th_bot = 0;  // polar angles from the north pole
    double th_mid = 0;
    double half_height = 0;  // angular half-height of the band
    double gap_width = 0;    // great-circle width of the band's bridge gap
};

struct ZoneInfo {
    double th_lo = 0, th_hi = 0;  // polar-angle interval between bands
    double gap_width = 0;         // width of the strip gap crossing this zone
};

// n horizontal circle pairs at heights 1 - 2i/(n+1) +- eps. The pairs must
// be pairwise disjoint and stay strictly inside the sphere.
inline std::vector<CirclePair> build_parallel_circles(int n, double eps) {
    if (n < 1) throw std::runtime_error("build_parallel_circles: need at least one band");
    if (eps <= 0) throw std::runtime_error("build_parallel_circles: eps must be positive");
    double step = 2.0 / (n + 1);
    if (2 * eps >= step) {
        std::string who = n == 1 ? "pair 1 leaves no room for the polar zones"
                                 : "pairs 1 and 2 collide";
        throw std::runtime_error("build_parallel_circles: " + who +
                                 "; need eps < 1/(n+1), got eps = " + std::to_string(eps));
    }
    std::vector<CirclePair> out;
    for (int i = 1; i <= n; ++i) {
        double z = 1 - step * i;
        if (z + eps >= 1 || z - eps <= -1)
            throw std::runtime_error("build_parallel_circles: pair " + std::to_string(i) +
                                     " leaves the sphere");
        out.push_back({SphereCircle{{0, 0, 1}, z + eps}, SphereCircle{{0, 0, 1}, z - eps}});
    }
    return out;
}

struct JordanCurve {
    int n = 0;
    double eps = 0;
    double width = 0;       // bridge gap width, in longitude radians
    double cut = 0;         // corner chamfer length
    std::vector<BandInfo> bands;
    std::vector<ZoneInfo> zones;  // zones[0] above band 0, zones[n] below band n-1
    SpherePath path;              // final closed path, corners chamfered
    double min_wall = 0;          // shortest bridge wall before chamfering
    double min_gap_width = 0;     // narrowest bridge gap, great-circle units
};

inline double arc_param(const SphereCircle& c, Vec3 p) {
    Vec3 u, v;
    tangent_basis(c.normal, u, v);
    return std::atan2(dot(p, v), dot(p, u));
}

inline SpherePoint lonlat_point(double lon, double th) {
    return {std::sin(th) * std::cos(lon), std::sin(th) * std::sin(lon), std::cos(th)};
}

// Stitch the band circles into one closed path. Each band's pair is cut open
// at longitude 0 and joined by meridian walls there; consecutive bands are
// joined by a strip crossing the zone between them at longitude pi/2. Every
// junction node has exactly one circle arc and one wall, so following the
// unique continuation traverses the whole curve once if and only if the
// gaps produce a single Jordan curve.
inline JordanCurve build_jordan_curve(int n, double eps, double width) {
    JordanCurve jc;
    jc.n = n;
    jc.eps = eps;
    jc.width = width;
    if (width <= 0) throw std::runtime_error("build_jordan_curve: width must be positive");
    if (width >= kPi / 2 - 1e-3)
        throw std::runtime_error("build_jordan_curve: bridges overlap; width must be below pi/2");

    std::vector<CirclePair> pairs = build_parallel_circles(n, eps);
    for (int i = 0; i < n; ++i) {
        BandInfo b;
        b.z = 1 - 2.0 * (i + 1) / (n + 1);
        b.z_top = b.z + eps;
        b.z_bot = b.z - eps;
        b.th_top = std::acos(b.z_top);
        b.th_bot = std::acos(b.z_bot);
        b.th_mid = 0.5 * (b.th_top + b.th_bot);
        b.half_height = 0.5 * (b.th_bot - b.th_top);
        b.gap_width = width * std::min(std::sin(b.th_top), std::sin(b.th_bot));
        jc.bands.push_back(b);
    }
    for (int j = 0; j <= n; ++j) {
        ZoneInfo z;
        z.th_lo = j == 0 ? 0.0 : jc.bands[j - 1].th_bot;
        z.th_hi = j == n ? kPi : jc.bands[j].th_top;
        if (j >= 1 && j <= n - 1)
            z.gap_width = width * std::min(std::sin(z.th_lo), std::sin(z.th_hi));
        jc.zones.push_back(z);
    }

    // circles 2i = top of band i, 2i+1 = bottom; bridges 0..n-1 cut the bands
    // at longitude 0, bridges n..2n-2 cross zone j = id-n+1 at longitude pi/2
    int bridges = 2 * n - 1;
    struct Gap {
        double lon;
        int bridge;
    };
    std::vector<std::vector<Gap>> gaps(2 * n);
    auto wall_circles = [&](int b, int& top, int& bot) {
        if (b < n) {
            top = 2 * b;
            bot = 2 * b + 1;
        } else {
            int j = b - n + 1;  // strip through zone j joins band j-1 to band j
            top = 2 * (j - 1) + 1;
            bot = 2 * j;
        }
    };
    for (int b = 0; b < bridges; ++b) {
        int top, bot;
        wall_circles(b, top, bot);
        double lon = b < n ? 0.0 : kPi / 2;
        gaps[top].push_back({lon, b});
        gaps[bot].push_back({lon, b});
    }
    for (auto& g : gaps) {
        std::sort(g.begin(), g.end(), [](const Gap& a, const Gap& b) { return a.lon < b.lon; });
        for (size_t k = 0; k < g.size(); ++k) {
            double d = wrap_2pi(g[(k + 1) % g.size()].lon - g[k].lon);
            if (g.size() > 1 && d < width + 1e-9)
                throw std::runtime_error("build_jordan_curve: bridge gaps overlap on a circle");
        }
    }

    // nodes keyed by (bridge, circle, east side); each gets one wall and one arc
    auto node_id = [&](int b, int c, int east) { return (b * 2 * n + c) * 2 + east; };
    int nn = bridges * 2 * n * 2;
    std::vector<int> wall_to(nn, -1), arc_to(nn, -1);
    std::vector<Vec3> pos(nn);
    std::vector<double> height(2 * n);
    for (int i = 0; i < n; ++i) {
        height[2 * i] = jc.bands[i].z_top;
        height[2 * i + 1] = jc.bands[i].z_bot;
    }
    auto node_point = [&](int b, int c, int east) {
        double lon = (b < n ? 0.0 : kPi / 2) + (east ? width / 2 : -width / 2);
        return lonlat_point(lon, std::acos(height[c]));
    };
    for (int b = 0; b < bridges; ++b) {
        int top, bot;
        wall_circles(b, top, bot);
        for (int east = 0; east < 2; ++east) {
            int u = node_id(b, top, east), v = node_id(b, bot, east);
            wall_to[u] = v;
            wall_to[v] = u;
            pos[u] = node_point(b, top, east);
            pos[v] = node_point(b, bot, east);
        }
    }
    for (int c = 0; c < 2 * n; ++c)
        for (size_t k = 0; k < gaps[c].size(); ++k) {
            const Gap& g = gaps[c][k];
            const Gap& h = gaps[c][(k + 1) % gaps[c].size()];
            // the arc from this gap's east edge runs east to the next gap's west edge
            arc_to[node_id(g.bridge, c, 1)] = node_id(h.bridge, c, 0);
            arc_to[node_id(h.bridge, c, 0)] = node_id(g.bridge, c, 1);
        }

    int expected = 8 * n - 4;
    SpherePath raw;
    int node = node_id(0, 0, 1);
    bool take_arc = true;
    for (int step = 0; step < expected; ++step) {
        int next = take_arc ? arc_to[node] : wall_to[node];
        if (next < 0) throw std::runtime_error("build_jordan_curve: dangling junction");
        if (take_arc) {
            int c = node % (4 * n) / 2;
            SphereCircle circ{{0, 0, 1}, height[c]};
            double t0 = arc_param(circ, pos[node]);
            double tq = arc_param(circ, pos[next]);
            // +z normals make the circle parameter increase eastward
            bool east = node & 1;
            double t1 = east ? t0 + wrap_2pi(tq - t0) : t0 - wrap_2pi(t0 - tq);
            raw.arcs.push_back({circ, t0, t1});
        } else {
            double lon = (node / (4 * n) < n ? 0.0 : kPi / 2) + ((node & 1) ? width / 2 : -width / 2);
            SphereCircle wall{{-std::sin(lon), std::cos(lon), 0}, 0.0};
            double t0 = arc_param(wall, pos[node]);
            double tq = arc_param(wall, pos[next]);
            double d = std::remainder(tq - t0, 2 * kPi);
            raw.arcs.push_back({wall, t0, t0 + d});
        }
        node = next;
        take_arc = !take_arc;
    }
    if (node != node_id(0, 0, 1))
        throw std::runtime_error("build_jordan_curve: bridges split the curve into several loops");

    jc.min_wall = kPi;
    jc.min_gap_width = kPi;
    for (const BandInfo& b : jc.bands) {
        jc.min_wall = std::min(jc.min_wall, 2 * b.half_height);
        jc.min_gap_width = std::min(jc.min_gap_width, b.gap_width);
    }
    for (int j = 1; j <= n - 1; ++j) {
        jc.min_wall = std::min(jc.min_wall, jc.zones[j].th_hi - jc.zones[j].th_lo);
        jc.min_gap_width = std::min(jc.min_gap_width, jc.zones[j].gap_width);
    }
    jc.cut = std::min(0.5 * jc.min_gap_width, 0.4 * jc.min_wall);
    jc.path = chamfered(raw, jc.cut);
    return jc;
}

// Point inside the traversal window of an arc, with slack in length units.
inline bool within_arc(const PathArc& a, Vec3 p, double slack) {
    double t = arc_param(a.circle, p);
    double dir = a.t1 >= a.t0 ? 1.0 : -1.0;
    double fwd = wrap_2pi(dir * (t - a.t0));
    double sp = slack / arc_speed(a);
    return fwd <= std::fabs(a.t1 - a.t0) + sp || fwd >= 2 * kPi - sp;
}

struct SimplicityReport {
    bool ok = true;
    int i = -1, j = -1;
    Vec3 where{};
};

// Exact pairwise arc intersection test. Adjacent arcs are expected to meet
// at their shared junction and nowhere else.
inline SimplicityReport curve_simplicity(const SpherePath& path) {
    SimplicityReport rep;
    int m = int(path.arcs.size());
    auto flag = [&](int i, int j, Vec3 w) {
        if (!rep.ok) return;
        rep.ok = false;
        rep.i = i;
        rep.j = j;
        rep.where = w;
    };
    for (int i = 0; i < m && rep.ok; ++i)
        for (int j = i + 1; j < m && rep.ok; ++j) {
            const PathArc& a = path.arcs[i];
            const PathArc& b = path.arcs[j];
            bool adj = (j == i + 1) || (i == 0 && j == m - 1);
            Vec3 shared = adj ? circle_point(a.circle, j == i + 1 ? a.t1 : a.t0) : Vec3{};
            double c12 = dot(a.circle.normal, b.circle.normal);
            double det = 1 - c12 * c12;
            if (det < 1e-14) {
                bool same = std::fabs(c12 - 1) < 1e-12 &&
                            std::fabs(a.circle.offset - b.circle.offset) < 1e-12;
                bool opp = std::fabs(c12 + 1) < 1e-12 &&
                           std::fabs(a.circle.offset + b.circle.offset) < 1e-12;
                if (!same && !opp) continue;  // parallel, distinct planes
                // same circle: their parameter windows must not overlap
                for (double tt : {b.t0, 0.5 * (b.t0 + b.t1), b.t1}) {
                    Vec3 p = circle_point(b.circle, tt);
                    if (within_arc(a, p, -1e-9) && (!adj || dist(p, shared) > 1e-7))
                        flag(i, j, p);
                }
                for (double tt : {a.t0, 0.5 * (a.t0 + a.t1), a.t1}) {
                    Vec3 p = circle_point(a.circle, tt);
                    if (within_arc(b, p, -1e-9) && (!adj || dist(p, shared) > 1e-7))
                        flag(i, j, p);
                }
                continue;
            }
            double u = (a.circle.offset - b.circle.offset * c12) / det;
            double v = (b.circle.offset - a.circle.offset * c12) / det;
            Vec3 base = u * a.circle.normal + v * b.circle.normal;
            double rem = 1 - dot(base, base);
            if (rem < 0) continue;
            Vec3 w = std::sqrt(rem / det) * cross(a.circle.normal, b.circle.normal);
            for (Vec3 p : {normalized(base + w), normalized(base - w)}) {
                if (!within_arc(a, p, 1e-9) || !within_arc(b, p, 1e-9)) continue;
                if (adj && dist(p, shared) < 1e-7) continue;
                flag(i, j, p);
            }
        }
    return rep;
}

// Great-circle distance from p to the closest point of the path.
inline double path_distance(const SpherePath& path, Vec3 p) {
    double best = kPi;
    for (const PathArc& a : path.arcs) {
        Vec3 u, v;
        tangent_basis(a.circle.normal, u, v);
        double s = arc_speed(a);
        double A = a.circle.offset * dot(p, a.circle.normal);
        double cu = s * dot(p, u), cv = s * dot(p, v);
        double R = std::hypot(cu, cv);
        double phi = std::atan2(cv, cu);
        double dir = a.t1 >= a.t0 ? 1.0 : -1.0;
        double fwd = wrap_2pi(dir * (phi - a.t0));
        double cbest;
        if (fwd <= std::fabs(a.t1 - a.t0))
            cbest = A + R;
        else
            cbest = std::max(A + R * std::cos(a.t0 - phi), A + R * std::cos(a.t1 - phi));
        best = std::min(best, std::acos(std::clamp(cbest, -1.0, 1.0)));
    }
    return best;
}

// Transversal crossings of the geodesic segment from a to b with the path.
// Used for point classification by crossing parity, so tangential or
// junction-grazing hits must not slip through: the arc windows are half-open
// in traversal order and a grazing hit on the segment is an error.
inline int segment_crossings(const SpherePath& path, Vec3 a, Vec3 b) {
    Vec3 m = cross(a, b);
    if (norm(m) < 1e-12)
        throw std::runtime_error("segment_crossings: endpoints are collinear with the origin");
    m = normalized(m);
    double span = angle_between(a, b);
    int count = 0;
    for (const PathArc& arc : path.arcs) {
        Vec3 u, v;
        tangent_basis(arc.circle.normal, u, v);
        double s = arc_speed(arc);
        if (s < 1e-15) continue;
        double A = arc.circle.offset * dot(arc.circle.normal, m);
        double cu = s * dot(u, m), cv = s * dot(v, m);
        double R = std::hypot(cu, cv);
        if (R < 1e-15 || std::fabs(A) > R) continue;
        double phi = std::atan2(cv, cu);
        double d = std::acos(std::clamp(-A / R, -1.0, 1.0));
        double dir = arc.t1 >= arc.t0 ? 1.0 : -1.0;
        double window = std::fabs(arc.t1 - arc.t0);
        for (double t : {phi + d, phi - d}) {
            double fwd = wrap_2pi(dir * (t - arc.t0));
            if (fwd >= 2 * kPi - 1e-12) fwd = 0;
            if (fwd >= window - 1e-12) continue;  // half-open: junction counts once
            Vec3 p = circle_point(arc.circle, t);
            if (angle_between(a, p) + angle_between(p, b) > span + 1e-9) continue;
            if (std::fabs(std::sin(t - phi)) * R < 1e-12)
                throw std::runtime_error("segment_crossings: grazing intersection");
            ++count;
        }
    }
    return count;
}

}  // namespace qfm
