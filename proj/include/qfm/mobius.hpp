#pragma once

#include <array>
#include <stdexcept>

#include "qfm/circle.hpp"

namespace qfm {

enum class Orientation { Preserving, Reversing };

// z -> (az+b)/(cz+d), with z conjugated first when reversing.
struct MobiusMap {
    Complex a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};
    Orientation orientation = Orientation::Preserving;

    bool reversing() const { return orientation == Orientation::Reversing; }

    Complex det() const { return a * d - b * c; }

    // Scale entries so |det| = 1.
    MobiusMap normalized() const {
        double s = std::sqrt(std::abs(det()));
        if (s < 1e-300) throw std::runtime_error("MobiusMap: singular matrix");
        return {a / s, b / s, c / s, d / s, orientation};
    }

    static MobiusMap identity() { return {}; }
};

inline PlanePoint apply(const MobiusMap& m, PlanePoint p) {
    if (p.at_inf) {
        if (std::abs(m.c) < 1e-300 * std::abs(m.a)) return PlanePoint::inf();
        return PlanePoint::of(m.a / m.c);
    }
    Complex z = m.reversing() ? std::conj(p.z) : p.z;
    Complex num = m.a * z + m.b, den = m.c * z + m.d;
    double an = std::abs(num), ad = std::abs(den);
    if (ad <= an * 1e-15) return PlanePoint::inf();
    return PlanePoint::of(num / den);
}

inline SpherePoint apply(const MobiusMap& m, SpherePoint p) {
    return to_sphere(apply(m, to_plane(p)));
}

inline MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2) {
    Complex a2 = m2.a, b2 = m2.b, c2 = m2.c, d2 = m2.d;
    if (m1.reversing()) {
        a2 = std::conj(a2); b2 = std::conj(b2); c2 = std::conj(c2); d2 = std::conj(d2);
    }
    MobiusMap r;
    r.a = m1.a * a2 + m1.b * c2;
    r.b = m1.a * b2 + m1.b * d2;
    r.c = m1.c * a2 + m1.d * c2;
    r.d = m1.c * b2 + m1.d * d2;
    r.orientation = (m1.reversing() != m2.reversing()) ? Orientation::Reversing
                                                       : Orientation::Preserving;
    return r.normalized();
}

inline MobiusMap inverse(const MobiusMap& m) {
    if (!m.reversing()) {
        Complex dt = m.det();
        return MobiusMap{m.d / dt, -m.b / dt, -m.c / dt, m.a / dt, m.orientation}.normalized();
    }
    // (a conj(z) + b)/(c conj(z) + d) inverted: conjugate adjugate, still reversing.
    return MobiusMap{std::conj(m.d), -std::conj(m.b), -std::conj(m.c), std::conj(m.a),
                     Orientation::Reversing}
        .normalized();
}

// Distance of a normalized matrix from +-identity; small iff the map is the identity.
inline double identity_defect(const MobiusMap& m) {
    MobiusMap n = m.normalized();
    auto dev = [&](double s) {
        return std::abs(n.a - s) + std::abs(n.b) + std::abs(n.c) + std::abs(n.d - s);
    };
    return std::min(dev(1.0), dev(-1.0));
}

// Inversion (anti-Mobius involution) fixing the circle pointwise.
inline MobiusMap inversion_in_circle(const SphereCircle& s) {
    PlaneCircle pc = to_plane_circle(s);
    MobiusMap m;
    m.orientation = Orientation::Reversing;
    if (pc.is_line) {
        Complex e = pc.dir * pc.dir;  // reflection across line p0 + t*dir
        m.a = e;
        m.b = pc.p0 - e * std::conj(pc.p0);
        m.c = {0, 0};
        m.d = {1, 0};
    } else {
        m.a = pc.c;
        m.b = pc.r * pc.r - std::norm(pc.c);
        m.c = {1, 0};
        m.d = -std::conj(pc.c);
    }
    return m.normalized();
}

// (z1-z3)(z2-z4) / ((z1-z2)(z3-z4)), with the usual limits at infinity.
inline Complex cross_ratio(PlanePoint z1, PlanePoint z2, PlanePoint z3, PlanePoint z4) {
    int infs = z1.at_inf + z2.at_inf + z3.at_inf + z4.at_inf;
    if (infs > 1) throw std::runtime_error("cross_ratio: repeated infinite point");
    if (z1.at_inf) return (z2.z - z4.z) / (z3.z - z4.z);
    if (z2.at_inf) return (z1.z - z3.z) / (z4.z - z3.z);
    if (z3.at_inf) return (z4.z - z2.z) / (z1.z - z2.z);
    if (z4.at_inf) return (z1.z - z3.z) / (z1.z - z2.z);
    return ((z1.z - z3.z) * (z2.z - z4.z)) / ((z1.z - z2.z) * (z3.z - z4.z));
}

// Image circle under a Mobius map: three mapped points plus a mapped interior
// point to pick the designated disk. A strongly contracting map can collapse
// one sample triple even when the image circle is fine, so rotate the samples
// before giving up; a throw here means every triple collapsed, i.e. the whole
// image is far smaller than any tolerance a caller would test against.
inline SphereCircle map_circle(const MobiusMap& m, const SphereCircle& c) {
    SpherePoint qc = apply(m, c.cap_center());
    for (double t0 : {0.1, 0.9, 1.7, 2.9}) {
        SpherePoint q1 = apply(m, circle_point(c, t0));
        SpherePoint q2 = apply(m, circle_point(c, t0 + 2.1));
        SpherePoint q3 = apply(m, circle_point(c, t0 + 4.2));
        try {
            return circle_through(q1, q2, q3, qc);
        } catch (const std::exception&) {
        }
    }
    throw std::runtime_error("map_circle: image too small to fit a circle through");
}

enum class ProductType { Loxodromic, Parabolic, EllipticOrder2 };

struct PairProduct {
    ProductType type;
    PlanePoint fixed1, fixed2;  // equal when parabolic
    MobiusMap g;                // the composed (orientation-preserving) map
};

// Compose the inversions in two circles and classify by trace squared.
inline PairProduct classify_pair_product(const SphereCircle& c1, const SphereCircle& c2,
                                         double tol = 1e-9) {
    MobiusMap g = compose(inversion_in_circle(c1), inversion_in_circle(c2));
    // normalize det to exactly 1 for the trace
    Complex dt = g.det();
    Complex s = std::sqrt(dt);
    Complex a = g.a / s, b = g.b / s, c = g.c / s, d = g.d / s;
    Complex tr2 = (a + d) * (a + d);

    PairProduct out;
    out.g = g;
    if (std::abs(tr2 - Complex{4, 0}) < tol) {
        out.type = ProductType::Parabolic;
        if (std::abs(c) > tol) {
            out.fixed1 = out.fixed2 = PlanePoint::of((a - d) / (2.0 * c));
        } else {
            out.fixed1 = out.fixed2 = PlanePoint::inf();
        }
        return out;
    }
    if (std::abs(tr2) < tol) {
        out.type = ProductType::EllipticOrder2;
    } else {
        out.type = ProductType::Loxodromic;
    }
    if (std::abs(c) > 1e-14) {
        Complex disc = std::sqrt((a + d) * (a + d) - 4.0);
        out.fixed1 = PlanePoint::of((a - d + disc) / (2.0 * c));
        out.fixed2 = PlanePoint::of((a - d - disc) / (2.0 * c));
    } else {
        out.fixed1 = PlanePoint::inf();
        out.fixed2 = std::abs(a - d) > 1e-14 ? PlanePoint::of(b / (d - a)) : PlanePoint::inf();
    }
    return out;
}

}  // namespace qfm
