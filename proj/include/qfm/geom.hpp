#pragma once

#include <cmath>
#include <complex>

#include "qfm/util.hpp"

namespace qfm {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) {
    double n = norm(a);
    return {a.x / n, a.y / n, a.z / n};
}
inline double dist(Vec3 a, Vec3 b) { return norm(a - b); }

// Angle between unit vectors, stable near 0 and pi.
inline double angle_between(Vec3 a, Vec3 b) {
    double h = 0.5 * norm(a - b);
    return 2.0 * std::asin(h > 1.0 ? 1.0 : h);
}

using SpherePoint = Vec3;  // unit vector

// Great-circle distance between unit vectors.
inline double sphere_dist(SpherePoint a, SpherePoint b) { return angle_between(a, b); }

// Point of the extended complex plane; the chart maps the north pole to infinity.
struct PlanePoint {
    Complex z{0, 0};
    bool at_inf = false;

    static PlanePoint inf() { return {Complex{0, 0}, true}; }
    static PlanePoint of(Complex w) { return {w, false}; }
};

inline bool approx(PlanePoint a, PlanePoint b, double tol = 1e-9) {
    if (a.at_inf || b.at_inf) return a.at_inf == b.at_inf;
    return std::abs(a.z - b.z) <= tol;
}

// Fixed stereographic chart from the north pole e3.
inline PlanePoint to_plane(SpherePoint p) {
    if (1.0 - p.z < 1e-14) return PlanePoint::inf();
    return PlanePoint::of(Complex{p.x, p.y} / (1.0 - p.z));
}

inline SpherePoint to_sphere(PlanePoint w) {
    if (w.at_inf) return {0, 0, 1};
    double r2 = std::norm(w.z);
    double d = 1.0 + r2;
    return {2 * w.z.real() / d, 2 * w.z.imag() / d, (r2 - 1) / d};
}

// Deterministic orthonormal basis {u, v} of the plane orthogonal to unit n.
inline void tangent_basis(Vec3 n, Vec3& u, Vec3& v) {
    Vec3 a = std::fabs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    u = normalized(cross(n, a));
    v = cross(n, u);
}

// Rotation taking unit vector `from` to unit vector `to` (Rodrigues), applied to p.
inline Vec3 rotate_align(Vec3 from, Vec3 to, Vec3 p) {
    Vec3 k = cross(from, to);
    double s = norm(k), c = dot(from, to);
    if (s < 1e-15) {
        if (c > 0) return p;
        Vec3 u, v;
        tangent_basis(from, u, v);
        return 2.0 * dot(p, u) * u - p;  // half-turn about u
    }
    Vec3 kh = (1.0 / s) * k;
    return c * p + s * cross(kh, p) + (1 - c) * dot(kh, p) * kh;
}

}  // namespace qfm
