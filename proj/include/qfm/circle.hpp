#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

#include "qfm/geom.hpp"

namespace qfm {

// Circle {x in S^2 : n.x = h} with designated disk {n.x > h}.
struct SphereCircle {
    Vec3 normal{0, 0, 1};
    double offset = 0;

    double cap_radius() const { return std::acos(std::clamp(offset, -1.0, 1.0)); }
    SpherePoint cap_center() const { return normal; }
    SphereCircle flipped() const { return {-normal, -offset}; }
    bool disk_contains_point(SpherePoint p) const { return dot(normal, p) > offset; }
};

inline SphereCircle circle_from_cap(SpherePoint center, double angular_radius) {
    return {normalized(center), std::cos(angular_radius)};
}

struct CirclePair {
    SphereCircle first, second;
};

// Parametrize the circle; t in [0, 2pi).
inline SpherePoint circle_point(const SphereCircle& c, double t) {
    Vec3 u, v;
    tangent_basis(c.normal, u, v);
    double s = std::sqrt(std::max(0.0, 1.0 - c.offset * c.offset));
    return c.offset * c.normal + s * (std::cos(t) * u + std::sin(t) * v);
}

// cos of the intersection angle; |result| > 1 means the circles are disjoint as sets.
inline double circle_cos_angle(const SphereCircle& a, const SphereCircle& b) {
    double d = std::sqrt((1 - a.offset * a.offset) * (1 - b.offset * b.offset));
    return (dot(a.normal, b.normal) - a.offset * b.offset) / d;
}

inline bool circles_intersect(const SphereCircle& a, const SphereCircle& b, double tol = 0.0) {
    return std::fabs(circle_cos_angle(a, b)) <= 1.0 + tol;
}

// Angle at which two intersecting circles meet.
inline double intersection_angle(const SphereCircle& a, const SphereCircle& b) {
    double c = circle_cos_angle(a, b);
    if (std::fabs(c) > 1.0 + 1e-9) throw std::runtime_error("intersection_angle: disjoint circles");
    return std::acos(std::clamp(c, -1.0, 1.0));
}

// The two intersection points of circles known to meet.
inline std::pair<SpherePoint, SpherePoint> circle_intersections(const SphereCircle& a,
                                                                const SphereCircle& b) {
    Vec3 n1 = a.normal, n2 = b.normal;
    double c12 = dot(n1, n2);
    double det = 1 - c12 * c12;
    if (det < 1e-14) throw std::runtime_error("circle_intersections: parallel normals");
    double u = (a.offset - b.offset * c12) / det;
    double v = (b.offset - a.offset * c12) / det;
    Vec3 base = u * n1 + v * n2;
    double rem = 1 - dot(base, base);
    if (rem < 0) {
        if (rem < -1e-9) throw std::runtime_error("circle_intersections: disjoint circles");
        rem = 0;
    }
    Vec3 w = std::sqrt(rem / det) * cross(n1, n2);
    return {normalized(base + w), normalized(base - w)};
}

// Whole circle b inside the designated disk of a (strict).
inline bool disk_contains(const SphereCircle& a, const SphereCircle& b) {
    double g = angle_between(a.normal, b.normal);
    return g + b.cap_radius() < a.cap_radius();
}

// Minimal great-circle distance between the circles as point sets.
inline double spherical_distance_rho(const SphereCircle& a, const SphereCircle& b) {
    if (circles_intersect(a, b)) return 0.0;
    double g = angle_between(a.normal, b.normal);
    double r1 = a.cap_radius(), r2 = b.cap_radius();
    // Extremes lie on the great circle through both cap centers: points at
    // angles {+-r1} and {g +- r2} along it.
    double best = 2 * kPi;
    for (double p : {r1, -r1})
        for (double q : {g - r2, g + r2}) {
            double m = std::fmod(std::fabs(p - q), 2 * kPi);
            m = std::min(m, 2 * kPi - m);
            best = std::min(best, m);
        }
    return best;
}

// --- plane chart representation (for inversion formulas) ---

// Image of a sphere circle in the north-pole chart: circle |z-c|=r or a line
// through p0 with unit direction dir. disk_inside: designated disk maps to the
// bounded side (circle case) / left side of dir (line case).
struct PlaneCircle {
    bool is_line = false;
    Complex c{0, 0};
    double r = 0;
    Complex p0{0, 0}, dir{1, 0};
    bool disk_inside = false;
};

inline PlaneCircle to_plane_circle(const SphereCircle& s) {
    double n3 = s.normal.z, h = s.offset;
    PlaneCircle pc;
    if (std::fabs(n3 - h) < 1e-13) {
        pc.is_line = true;
        // 2(n1 x + n2 y) = n3 + h
        Complex n{s.normal.x, s.normal.y};
        double an = std::abs(n);
        if (an < 1e-14) throw std::runtime_error("to_plane_circle: degenerate circle at pole");
        pc.p0 = (n3 + h) / (2.0 * an * an) * n;
        pc.dir = Complex{0, 1} * (n / an);
        return pc;
    }
    pc.c = Complex{s.normal.x, s.normal.y} / (h - n3);
    pc.r = std::sqrt(std::max(0.0, 1 - h * h)) / std::fabs(n3 - h);
    pc.disk_inside = n3 < h;
    return pc;
}

// Circle through three sphere points, designated disk chosen to contain `inside`.
inline SphereCircle circle_through(SpherePoint p1, SpherePoint p2, SpherePoint p3,
                                   SpherePoint inside) {
    Vec3 n = cross(p2 - p1, p3 - p1);
    double nn = norm(n);
    if (nn < 1e-13) throw std::runtime_error("circle_through: collinear points");
    n = (1.0 / nn) * n;
    double h = dot(n, p1);
    SphereCircle c{n, h};
    if (!c.disk_contains_point(inside)) c = c.flipped();
    return c;
}

}  // namespace qfm
