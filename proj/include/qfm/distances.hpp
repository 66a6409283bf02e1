#pragma once

#include <string>

#include "qfm/mobius.hpp"

namespace qfm {

constexpr double kTangencyTol = 1e-9;

// Hyperbolic distance between the geodesic planes spanning two disjoint
// circles. Tangent or crossing circles give 0. Method: the four points cut by
// the great circle through both cap centers are projected to the real line;
// the distance is 2 atanh(1/sqrt(X)) for their cross-ratio X.
inline double plane_distance_dL(const SphereCircle& c1, const SphereCircle& c2) {
    if (circles_intersect(c1, c2, kTangencyTol)) return 0.0;

    Vec3 w = cross(c1.normal, c2.normal);
    if (norm(w) < 1e-9) {  // coaxial: any great circle through the common axis
        Vec3 u, v;
        tangent_basis(c1.normal, u, v);
        w = u;
    }
    w = normalized(w);

    double r1 = c1.cap_radius(), r2 = c2.cap_radius();
    Vec3 t1 = normalized(cross(w, c1.normal));
    Vec3 t2 = normalized(cross(w, c2.normal));
    SpherePoint a1 = std::cos(r1) * c1.normal + std::sin(r1) * t1;
    SpherePoint a2 = std::cos(r1) * c1.normal - std::sin(r1) * t1;
    SpherePoint b1 = std::cos(r2) * c2.normal + std::sin(r2) * t2;
    SpherePoint b2 = std::cos(r2) * c2.normal - std::sin(r2) * t2;

    // Angular coordinates along the great circle with normal w.
    Vec3 e1 = normalized(a1 - dot(a1, w) * w), e2 = cross(w, e1);
    auto ang = [&](SpherePoint p) { return std::atan2(dot(p, e2), dot(p, e1)); };
    struct P { double th; int who; };
    P pts[4] = {{ang(a1), 0}, {ang(a2), 0}, {ang(b1), 1}, {ang(b2), 1}};
    std::sort(pts, pts + 4, [](const P& x, const P& y) { return x.th < y.th; });

    // Disjoint circles: cyclic pattern AABB. Cut in the middle of an adjacent
    // same-circle gap so the linear order reads A B B A.
    int cut = -1;
    for (int i = 0; i < 4; ++i)
        if (pts[i].who == pts[(i + 1) % 4].who && pts[(i + 3) % 4].who != pts[i].who) {
            cut = i;
            break;
        }
    if (cut < 0) throw std::runtime_error("plane_distance_dL: interleaved circle points");
    double lo = pts[cut].th, hi = pts[(cut + 1) % 4].th;
    if (cut == 3) hi += 2 * kPi;
    double pole = 0.5 * (lo + hi);

    double t[4];
    for (int i = 0; i < 4; ++i) {
        double x = pts[(cut + 1 + i) % 4].th - pole;
        while (x <= 0) x += 2 * kPi;
        t[i] = -1.0 / std::tan(0.5 * x);
    }
    // order after the cut: outer, inner, inner, outer
    double X = ((t[0] - t[2]) * (t[1] - t[3])) / ((t[0] - t[1]) * (t[2] - t[3]));
    if (X < 1.0) {
        if (X > 1.0 - 1e-9) return 0.0;
        throw std::runtime_error("plane_distance_dL: cross-ratio below 1");
    }
    return 2.0 * std::atanh(std::sqrt(1.0 / X));
}

inline double plane_distance_dL(const CirclePair& p) {
    return plane_distance_dL(p.first, p.second);
}

struct GoodPositionReport {
    bool ok = true;
    int i = -1, j = -1;
    std::string reason;
};

// Pairwise disjoint circles whose designated disks contain no other circle of
// the family.
inline GoodPositionReport good_position(const std::vector<SphereCircle>& fam) {
    GoodPositionReport rep;
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = 0; j < fam.size(); ++j) {
            if (i == j) continue;
            if (i < j && circles_intersect(fam[i], fam[j], kTangencyTol)) {
                rep.ok = false; rep.i = int(i); rep.j = int(j);
                rep.reason = "circles intersect";
                return rep;
            }
            if (disk_contains(fam[i], fam[j])) {
                rep.ok = false; rep.i = int(i); rep.j = int(j);
                rep.reason = "designated disk contains another circle";
                return rep;
            }
        }
    return rep;
}

// For disjoint circles: the designation combo with disjoint closed designated
// disks, which is unique. Input designations are ignored.
inline CirclePair canonical_disjoint_pair(const SphereCircle& c1, const SphereCircle& c2) {
    SphereCircle a = c1, b = c2;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            SphereCircle u = i ? a.flipped() : a;
            SphereCircle v = j ? b.flipped() : b;
            double g = angle_between(u.normal, v.normal);
            if (g > u.cap_radius() + v.cap_radius() + kTangencyTol) return {u, v};
        }
    throw std::runtime_error("canonical_disjoint_pair: circles not disjoint");
}

// Ideal endpoints of the common perpendicular axis of a disjoint pair: the
// fixed points of the composed inversions. Ordered with the endpoint inside
// the canonical disk of `first` first.
inline std::pair<SpherePoint, SpherePoint> coaxial_axis(const SphereCircle& c1,
                                                        const SphereCircle& c2) {
    PairProduct pp = classify_pair_product(c1, c2);
    if (pp.type != ProductType::Loxodromic)
        throw std::runtime_error("coaxial_axis: circles not disjoint");
    SpherePoint f1 = to_sphere(pp.fixed1), f2 = to_sphere(pp.fixed2);
    CirclePair can = canonical_disjoint_pair(c1, c2);
    if (can.first.disk_contains_point(f1)) return {f1, f2};
    if (can.first.disk_contains_point(f2)) return {f2, f1};
    throw std::runtime_error("coaxial_axis: fixed point not inside designated disk");
}

// Mobius map sending the pair to circles |w| = exp(-s), |w| = exp(+s) centered
// at 0; returns the map and s = dL/2. Used as an independent route to dL.
struct ConcentricNormalization {
    MobiusMap map;
    double s;
};

inline ConcentricNormalization normalize_to_concentric(const SphereCircle& c1,
                                                       const SphereCircle& c2) {
    auto [p, q] = coaxial_axis(c1, c2);
    // send p -> 0, q -> inf by z -> (z - P)/(z - Q) in the chart
    PlanePoint P = to_plane(p), Q = to_plane(q);
    MobiusMap m;
    if (Q.at_inf) {
        m = MobiusMap{{1, 0}, -P.z, {0, 0}, {1, 0}, Orientation::Preserving};
    } else if (P.at_inf) {
        m = MobiusMap{{0, 0}, {1, 0}, {1, 0}, -Q.z, Orientation::Preserving};
    } else {
        m = MobiusMap{{1, 0}, -P.z, {1, 0}, -Q.z, Orientation::Preserving};
    }
    SphereCircle d1 = map_circle(m, c1), d2 = map_circle(m, c2);
    // both images are centered on the pole axis; radii from cap geometry
    PlaneCircle k1 = to_plane_circle(d1), k2 = to_plane_circle(d2);
    if (k1.is_line || k2.is_line)
        throw std::runtime_error("normalize_to_concentric: unexpected line image");
    double r1 = k1.r, r2 = k2.r;
    double s = 0.5 * std::fabs(std::log(r2 / r1));
    // rescale so radii are exp(-s), exp(+s)
    double scale = 1.0 / std::sqrt(r1 * r2);
    MobiusMap sc{Complex{scale, 0}, {0, 0}, {0, 0}, {1, 0}, Orientation::Preserving};
    return {compose(sc, m), s};
}

}  // namespace qfm
