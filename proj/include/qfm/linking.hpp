#pragma once

#include <stdexcept>
#include <vector>

#include "qfm/geom.hpp"

namespace qfm {

// Signed solid angle of the spherical triangle spanned by directions a, b, c
// (Van Oosterom-Strackee). Inputs need not be normalized.
inline double triangle_solid_angle(Vec3 a, Vec3 b, Vec3 c) {
    double la = norm(a), lb = norm(b), lc = norm(c);
    double num = dot(a, cross(b, c));
    double den = la * lb * lc + dot(a, b) * lc + dot(b, c) * la + dot(c, a) * lb;
    return 2 * std::atan2(num, den);
}

// Gauss integral of (u x v) . (x - y)/|x - y|^3 over segments p1p2, q1q2.
// Equals the signed solid angle of the quadrilateral swept by the difference
// direction, split into two spherical triangles.
inline double gauss_segment_pair(Vec3 p1, Vec3 p2, Vec3 q1, Vec3 q2) {
    Vec3 a = p1 - q1, b = p1 - q2, c = p2 - q2, d = p2 - q1;
    return triangle_solid_angle(a, b, c) + triangle_solid_angle(a, c, d);
}

// Closest approach of segments p1p2 and q1q2. Coordinate descent on the
// clamped quadratic; alternation converges for this box-constrained problem
// and three sweeps are plenty for a guard.
inline double segment_distance(Vec3 p1, Vec3 p2, Vec3 q1, Vec3 q2) {
    Vec3 u = p2 - p1, v = q2 - q1, w = p1 - q1;
    double a = dot(u, u), b = dot(u, v), c = dot(v, v), d = dot(u, w), e = dot(v, w);
    double den = a * c - b * b;
    double s = den > 1e-300 ? std::clamp((b * e - c * d) / den, 0.0, 1.0) : 0.0;
    double t = 0;
    for (int sweep = 0; sweep < 3; ++sweep) {
        t = c > 0 ? std::clamp((b * s + e) / c, 0.0, 1.0) : 0.0;
        s = a > 0 ? std::clamp((b * t - d) / a, 0.0, 1.0) : 0.0;
    }
    return dist(p1 + s * u, q1 + t * v);
}

struct LinkingResult {
    int value = 0;          // rounded linking number
    double raw = 0;         // Gauss integral before rounding
    double separation = 0;  // closest approach of the two loops
};

// Linking number of two closed polygonal loops (vertices, last joined back to
// first). The per-pair closed form makes the sum exact up to roundoff, so for
// honest disjoint loops raw lands on an integer to ~1e-12. Throws when the
// loops come within min_separation of each other, where the integral stops
// being trustworthy.
inline LinkingResult linking_number(const std::vector<Vec3>& loop_a,
                                    const std::vector<Vec3>& loop_b,
                                    double min_separation = 1e-6) {
    if (loop_a.size() < 3 || loop_b.size() < 3)
        throw std::runtime_error("linking_number: loops need at least 3 vertices");
    double omega = 0;
    double sep = 1e300;
    size_t na = loop_a.size(), nb = loop_b.size();
    for (size_t i = 0; i < na; ++i) {
        Vec3 p1 = loop_a[i], p2 = loop_a[(i + 1) % na];
        for (size_t j = 0; j < nb; ++j) {
            Vec3 q1 = loop_b[j], q2 = loop_b[(j + 1) % nb];
            sep = std::min(sep, segment_distance(p1, p2, q1, q2));
            omega += gauss_segment_pair(p1, p2, q1, q2);
        }
    }
    if (sep < min_separation)
        throw std::runtime_error("linking_number: loops too close to integrate reliably");
    LinkingResult r;
    r.raw = omega / (4 * kPi);
    r.separation = sep;
    r.value = int(std::llround(r.raw));
    return r;
}

}  // namespace qfm
