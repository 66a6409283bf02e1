#pragma once

#include <array>
#include <limits>
#include <optional>

#include "qfm/distances.hpp"

namespace qfm {

// Profile of a minimal surface of revolution about a geodesic, in Fermi
// coordinates (t = arclength along the axis, r = distance from it). The metric
// is cosh^2(r) dt^2 + dr^2 + sinh^2(r) dtheta^2 and the profile satisfies the
// first integral sinh(r) cosh^2(r) / sqrt(cosh^2(r) + r'^2) = sinh(a) cosh(a).
struct GeneratingCurve {
    double neck_parameter = 0;                   // r at the waist
    std::vector<std::pair<double, double>> samples;  // (t, r), t increasing, full curve
    double plane_separation = 0;                 // distance between asymptotic planes
    double t_inf = 0;                            // asymptotic half-width
    double r_switch = 0;                         // radius where sampling switched to r
};

namespace cat {

// dt/dr on the quarter-profile.
inline double dtdr(double a, double r) {
    double s2a = std::sinh(2 * a), s2r = std::sinh(2 * r);
    double rad = s2r * s2r - s2a * s2a;
    if (rad <= 0) return 0;
    return s2a / (std::cosh(r) * std::sqrt(rad));
}

// sinh(x)/x, finite through x = 0.
inline double sinhc(double x) {
    if (std::fabs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
    }
    return std::sinh(x) / x;
}

// t(r) from the neck by quadrature. With r = a + u^2 and the factorization
// sinh^2 2r - sinh^2 2a = sinh(2u^2) sinh(2(r+a)) the transformed integrand
//   sqrt(2) sinh 2a / (cosh r sqrt(sinhc(2u^2) sinh(2(r+a))))
// is analytic on [0, U] and free of cancellation at the neck.
inline double t_of_r(double a, double r, double tol = 1e-13) {
    if (r <= a) return 0;
    double U = std::sqrt(r - a);
    double s2a = std::sinh(2 * a);
    const double rt2 = std::sqrt(2.0);
    return integrate(
        [a, s2a, rt2](double u) {
            double rr = a + u * u;
            return rt2 * s2a /
                   (std::cosh(rr) * std::sqrt(sinhc(2 * u * u) * std::sinh(2 * (rr + a))));
        },
        0, U, tol);
}

inline double half_width(double a) {
    // integrand decays like exp(-3r); 16 + neck is far past double precision
    return t_of_r(a, std::max(2 * a, 2.0) + 16.0);
}

inline double separation(double a) { return 2 * half_width(a); }

// Renormalized area gap between the catenoid and the two totally geodesic
// disks spanning the same truncation circles; negative means the catenoid has
// less area in every sufficiently large truncation. The area element is
// 2 pi sinh^2 r cosh r / sqrt(sinh^2 r cosh^2 r - k^2) dr per half, the disks
// contribute 2 pi (cosh R - 1) each, and the difference telescopes to a
// convergent integral plus (1 - cosh a).
inline double area_deficit(double a) {
    double U = std::sqrt(std::max(2 * a, 2.0) + 16.0 - a);
    const double rt2 = std::sqrt(2.0);
    double s2a = std::sinh(2 * a);
    // flux - 2u rewritten via flux^2 - 4u^2 = 2 sinh^2 2a / den, so the tail
    // decays as exp(-3r) without catastrophic cancellation.
    double I = integrate(
        [a, rt2, s2a](double u) {
            double r = a + u * u;
            double den = sinhc(2 * u * u) * std::sinh(2 * (r + a));
            double flux = rt2 * std::sinh(2 * r) / std::sqrt(den);
            return std::sinh(r) * 2 * s2a * s2a / (den * (flux + 2 * u));
        },
        0, U, 1e-13);
    return 4 * kPi * (I - std::cosh(a) + 1.0);
}

}  // namespace cat

// Integrates the profile through the neck with an adaptive Runge-Kutta pass in
// t, switching to r as the parameter once the slope passes 10, then mirrors.
inline GeneratingCurve solve_generating_curve(double a) {
    if (a <= 0) throw std::runtime_error("solve_generating_curve: neck parameter must be > 0");
    GeneratingCurve gc;
    gc.neck_parameter = a;

    double k = std::sinh(a) * std::cosh(a);

    // Series start: r = a + kappa t^2 / 2 with kappa = cosh(a) cosh(2a) / sinh(a).
    double kappa = std::cosh(a) * std::cosh(2 * a) / std::sinh(a);
    double t0 = 1e-5;
    std::vector<double> y0 = {a + 0.5 * kappa * t0 * t0, kappa * t0};

    // r'' = F'(r)/2 for F = sinh^2 r cosh^4 r / k^2 - cosh^2 r (= r'^2).
    auto ode = [k](double, const double* y, double* dy) {
        double r = y[0];
        double c = std::cosh(r), s = std::sinh(r);
        dy[0] = y[1];
        dy[1] = s * c * c * c * (c * c + 2 * s * s) / (k * k) - s * c;
    };
    OdeResult stage1 = rk45(ode, t0, 10.0, y0, 1e-12, 1e-14,
                            [](double, const double* y) { return y[1] > 10.0; });

    std::vector<std::pair<double, double>> half;  // (t, r) for t >= 0
    half.push_back({0.0, a});
    for (size_t i = 0; i < stage1.xs.size(); ++i)
        half.push_back({stage1.xs[i], stage1.ys[i][0]});

    double r_switch = half.back().second;
    gc.r_switch = r_switch;
    double r_cut = std::max(2 * a, 2.0) + 16.0;
    int m = 400;
    for (int i = 1; i <= m; ++i) {
        double r = r_switch + (r_cut - r_switch) * i / m;
        double t = cat::t_of_r(a, r);
        if (t <= half.back().first) break;  // t has saturated in double precision
        half.push_back({t, r});
    }

    gc.t_inf = cat::half_width(a);
    gc.plane_separation = 2 * gc.t_inf;

    for (auto it = half.rbegin(); it != half.rend(); ++it)
        if (it->first > 0) gc.samples.push_back({-it->first, it->second});
    for (auto& p : half) gc.samples.push_back(p);
    return gc;
}

// Finite-difference weights on five scattered nodes for derivatives 0..2 at
// x0 (Fornberg's recurrence).
inline std::array<std::array<double, 5>, 3> fd_weights5(double x0,
                                                        const std::array<double, 5>& x) {
    std::array<std::array<double, 5>, 3> c{};
    double c1 = 1, c4 = x[0] - x0;
    c[0][0] = 1;
    for (int i = 1; i < 5; ++i) {
        int mn = std::min(i, 2);
        double c2 = 1, c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

// Maximum defect of the samples against the profile equation in explicit
// second-order form, r'' = ((cosh 2r + r'^2)(cosh^2 r + r'^2) - r'^2 (1 +
// r'^2)) / (sinh r cosh r), with both derivatives taken by five-point
// scattered-node differences. Steep stretches are skipped: the t-difference
// quotient loses meaning there, and that part of the curve is sampled in r.
inline double mean_curvature_residual(const GeneratingCurve& gc, double slope_cap = 3.0) {
    const auto& s = gc.samples;
    double worst = 0;
    if (s.size() < 5) return kPi;
    for (size_t i = 2; i + 2 < s.size(); ++i) {
        std::array<double, 5> ts, rs;
        bool usable = true;
        for (int j = 0; j < 5; ++j) {
            ts[j] = s[i - 2 + j].first;
            rs[j] = s[i - 2 + j].second;
            if (j > 0 && ts[j] <= ts[j - 1]) usable = false;
        }
        if (!usable) continue;
        for (int j = 0; j < 4; ++j)
            if (std::fabs((rs[j + 1] - rs[j]) / (ts[j + 1] - ts[j])) > slope_cap) usable = false;
        if (!usable) continue;
        auto w = fd_weights5(ts[2], ts);
        double d1 = 0, d2 = 0;
        for (int j = 0; j < 5; ++j) {
            d1 += w[1][j] * rs[j];
            d2 += w[2][j] * rs[j];
        }
        double r = rs[2], p2 = d1 * d1;
        double F = ((std::cosh(2 * r) + p2) * (std::cosh(r) * std::cosh(r) + p2) -
                    p2 * (1 + p2)) /
                   (std::sinh(r) * std::cosh(r));
        double res = std::fabs(d2 - F) / (1 + std::fabs(F));
        worst = std::max(worst, res);
    }
    return worst;
}

struct ThresholdEstimates {
    double d0 = 0, d0_lo = 0, d0_hi = 0;  // max separation admitting a catenoid
    double d1 = 0, d1_lo = 0, d1_hi = 0;  // max separation admitting a least-area one
    double a_star = 0;                    // argmax of the separation
    double a_one = 0;                     // area deficit root on the fat branch
    double tol = 0;
};

// d0 = max over a of the separation. The separation profile is checked for
// unimodality on a coarse grid first; if that ever failed the grid maximum
// would seed a local refine instead.
inline ThresholdEstimates existence_threshold(double tol = 1e-10) {
    ThresholdEstimates th;
    th.tol = tol;
    double lo = 0.02, hi = 3.0;
    int n = 60;
    double best = -1, besta = lo;
    for (int i = 0; i <= n; ++i) {
        double a = lo + (hi - lo) * i / n;
        double d = cat::separation(a);
        if (d > best) { best = d; besta = a; }
    }
    double wlo = std::max(lo, besta - (hi - lo) / n);
    double whi = std::min(hi, besta + (hi - lo) / n);
    th.a_star = golden_max([](double a) { return cat::separation(a); }, wlo, whi, tol);
    th.d0 = cat::separation(th.a_star);
    th.d0_lo = th.d0;
    th.d0_hi = th.d0 + 10 * tol;
    return th;
}

// d1: on the branch a > a_star the area deficit decreases through 0; the
// threshold is the separation at the root.
inline ThresholdEstimates least_area_threshold(double tol = 1e-10) {
    ThresholdEstimates th = existence_threshold(tol);
    double lo = th.a_star, hi = 6.0;
    if (cat::area_deficit(lo) <= 0 || cat::area_deficit(hi) >= 0)
        throw std::runtime_error("least_area_threshold: deficit bracket failed");
    th.a_one = brent_root([](double a) { return cat::area_deficit(a); }, lo, hi, tol);
    th.d1 = cat::separation(th.a_one);
    th.d1_lo = cat::separation(th.a_one + tol * 10);
    th.d1_hi = cat::separation(th.a_one - tol * 10);
    return th;
}

// Neck parameters whose catenoid realizes plane separation d: none above d0,
// two below (thin and fat branch), one at the peak.
inline std::vector<double> catenoids_for_distance(double d, const ThresholdEstimates& th,
                                                  double tol = 1e-12) {
    std::vector<double> out;
    if (d <= 0 || d > th.d0) return out;
    auto f = [d](double a) { return cat::separation(a) - d; };
    double thin_lo = 1e-6;
    if (f(thin_lo) < 0)
        out.push_back(brent_root(f, thin_lo, th.a_star, tol));
    double hi = 8.0;
    if (f(hi) < 0)
        out.push_back(brent_root(f, th.a_star, hi, tol));
    return out;
}

// --- solids in the ball model ---

// Minkowski 4-vectors (signature + - - -); hyperboloid sheet <X,X> = 1, X0 > 0.
struct MinkV {
    double t = 0;
    Vec3 v;
};

inline double mdot(const MinkV& A, const MinkV& B) { return A.t * B.t - dot(A.v, B.v); }
inline MinkV madd(const MinkV& A, const MinkV& B) { return {A.t + B.t, A.v + B.v}; }
inline MinkV mscale(double s, const MinkV& A) { return {s * A.t, s * A.v}; }

inline MinkV lift_ball(Vec3 x) {
    double r2 = dot(x, x);
    if (r2 >= 1) throw std::runtime_error("lift_ball: point not inside the ball");
    return {(1 + r2) / (1 - r2), (2 / (1 - r2)) * x};
}

inline Vec3 drop_ball(const MinkV& X) { return (1.0 / (1.0 + X.t)) * X.v; }

inline MinkV ideal_null(SpherePoint p) { return {1.0, p}; }

// Spacelike Minkowski normal of the geodesic plane spanning a circle,
// normalized to mdot(e, e) = -1.
inline MinkV plane_spacelike_normal(const SphereCircle& c) {
    double s = 1.0 / std::sqrt(1.0 - c.offset * c.offset);
    return {c.offset * s, s * c.normal};
}

// Geodesic with ideal endpoints p, q, carried as a Lorentz frame:
//   G(t) = cosh-like combination of the scaled null ends,
//   N1, N2 = unit normals spanning the constant normal plane.
struct AxisFrame {
    MinkV P, Q;   // scaled so mdot(P,Q) = 2
    MinkV N1, N2; // spacelike unit, mdot = -1
    SpherePoint end_p, end_q;

    MinkV point(double t) const {
        return madd(mscale(0.5 * std::exp(t), P), mscale(0.5 * std::exp(-t), Q));
    }
    MinkV tangent(double t) const {
        return madd(mscale(0.5 * std::exp(t), P), mscale(-0.5 * std::exp(-t), Q));
    }
};

inline AxisFrame axis_frame(SpherePoint p, SpherePoint q) {
    AxisFrame fr;
    fr.end_p = p;
    fr.end_q = q;
    MinkV P = ideal_null(p), Q = ideal_null(q);
    double pq = mdot(P, Q);  // = 1 - p.q > 0 for distinct ends
    if (pq < 1e-12) throw std::runtime_error("axis_frame: coincident ideal endpoints");
    double s = std::sqrt(2.0 / pq);
    fr.P = mscale(s, P);
    fr.Q = mscale(s, Q);
    // normal plane = Minkowski orthocomplement of span(P,Q)
    Vec3 u = cross(p, q);
    if (norm(u) < 1e-9) {
        Vec3 a, b;
        tangent_basis(p, a, b);
        u = a;
    }
    u = normalized(u);
    fr.N1 = {0.0, u};  // orthogonal to both null ends since u is orthogonal to p and q
    // second normal: Gram-Schmidt of a spacelike seed against P, Q, N1
    MinkV W{0.0, normalized(cross(u, p - q))};
    // project out P and Q components: for null vectors use the dual basis
    double wp = mdot(W, fr.P), wq = mdot(W, fr.Q);
    // subtract (wq/2) P + (wp/2) Q  (since mdot(P,Q)=2, mdot(P,P)=0)
    W = madd(W, mscale(-0.5 * wq, fr.P));
    W = madd(W, mscale(-0.5 * wp, fr.Q));
    double wn = mdot(W, fr.N1);
    W = madd(W, mscale(wn, fr.N1));  // mdot(N1,N1) = -1
    double ww = -mdot(W, W);
    if (ww < 1e-18) throw std::runtime_error("axis_frame: degenerate normal frame");
    fr.N2 = mscale(1.0 / std::sqrt(ww), W);
    return fr;
}

// Fermi coordinates of a ball point relative to the frame.
struct FermiCoords {
    double t, r;
};

inline FermiCoords fermi_of_ball(const AxisFrame& fr, Vec3 x) {
    MinkV X = lift_ball(x);
    double xp = mdot(X, fr.P), xq = mdot(X, fr.Q);
    // X = alpha(t) frame + normal part; cosh r = sqrt(xp*xq), exp(2t) = xq/xp... derive:
    // mdot(X, P) = cosh(r) * mdot(G(t), P) = cosh(r) * exp(-t) (since mdot(P,Q)=2)
    // mdot(X, Q) = cosh(r) * exp(t)
    double prod = std::max(xp * xq, 1.0);
    double r = std::acosh(std::sqrt(prod));
    double t = 0.5 * std::log(xq / xp);
    return {t, r};
}

// Ball point of Fermi coordinates (t, r, theta).
inline Vec3 ball_of_fermi(const AxisFrame& fr, double t, double r, double theta) {
    MinkV X = mscale(std::cosh(r), fr.point(t));
    X = madd(X, mscale(std::sinh(r) * std::cos(theta), fr.N1));
    X = madd(X, mscale(std::sinh(r) * std::sin(theta), fr.N2));
    return drop_ball(X);
}

// Ideal point in direction theta at axis coordinate t.
inline SpherePoint ideal_of_fermi(const AxisFrame& fr, double t, double theta) {
    MinkV X = fr.point(t);
    X = madd(X, mscale(std::cos(theta), fr.N1));
    X = madd(X, mscale(std::sin(theta), fr.N2));
    return normalized((1.0 / X.t) * X.v);
}

struct CatenoidSolution {
    std::pair<SpherePoint, SpherePoint> axis;
    CirclePair boundary;
    GeneratingCurve curve;
    double dL = 0;
    double area_deficit = 0;  // negative for the least-area branch selection
    double neck = 0;
};

// Solid catenoid: the component of the complement containing the axis.
// Membership queries interpolate the profile with cubic Hermite segments whose
// endpoint slopes come from the first integral, choosing r(t) near the neck and
// t(r) on the steep flank so the accuracy never degrades.
struct SolidCatenoid {
    CatenoidSolution solution;
    AxisFrame frame;

    // dr/dt at radius r, from the first integral; 0 at the neck.
    double profile_slope(double r) const {
        double a = solution.neck;
        double k = std::sinh(a) * std::cosh(a);
        double s = std::sinh(r), c = std::cosh(r);
        double rad = s * s * c * c - k * k;
        return rad <= 0 ? 0.0 : c * std::sqrt(rad) / k;
    }

    static double hermite(double x0, double y0, double m0, double x1, double y1, double m1,
                          double x) {
        double h = x1 - x0;
        if (h <= 0) return y0;
        double u = (x - x0) / h;
        double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * m0 +
               (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * m1;
    }

    // r(t) of the surface for t in [0, t_inf); past the last sample uses the
    // asymptotic tail r ~ ln(4 sinh 2a / 3(t_inf - t)) / 3.
    double surface_r(double tabs) const {
        const auto& s = solution.curve.samples;
        double tinf = solution.curve.t_inf;
        if (tabs >= tinf) return std::numeric_limits<double>::infinity();
        size_t half = s.size() / 2;  // samples are mirrored; search the t >= 0 part
        double tlast = s.back().first;
        if (tabs >= tlast) {
            double gap = std::max(tinf - tabs, 1e-300);
            return std::log(4 * std::sinh(2 * solution.neck) / (3 * gap)) / 3.0;
        }
        size_t lo = half, hi = s.size() - 1;
        while (lo + 1 < hi) {
            size_t mid = (lo + hi) / 2;
            if (s[mid].first <= tabs) lo = mid; else hi = mid;
        }
        return hermite(s[lo].first, s[lo].second, profile_slope(s[lo].second),
                       s[hi].first, s[hi].second, profile_slope(s[hi].second), tabs);
    }

    // t(r) of the surface on the steep flank (r >= r_switch); past the last
    // sample uses the tail t_inf - (4 sinh 2a / 3) exp(-3r).
    double surface_t(double r) const {
        const auto& s = solution.curve.samples;
        double a = solution.neck;
        double rlast = s.back().second;
        if (r >= rlast)
            return solution.curve.t_inf -
                   (4.0 * std::sinh(2 * a) / 3.0) * std::exp(-3.0 * r);
        size_t half = s.size() / 2;
        size_t lo = half, hi = s.size() - 1;
        while (lo + 1 < hi) {
            size_t mid = (lo + hi) / 2;
            if (s[mid].second <= r) lo = mid; else hi = mid;
        }
        return hermite(s[lo].second, s[lo].first, cat::dtdr(a, s[lo].second),
                       s[hi].second, s[hi].first, cat::dtdr(a, s[hi].second), r);
    }

    // Signed margin, positive inside: an r-difference near the neck, a
    // t-difference rescaled by dr/dt on the flank so the zero set is the
    // surface and the scale stays comparable to the r-difference.
    double depth(Vec3 x) const {
        FermiCoords f = fermi_of_ball(frame, x);
        double tabs = std::fabs(f.t);
        if (tabs >= solution.curve.t_inf) return 1e9;
        double a = solution.neck;
        if (f.r > a && f.r >= solution.curve.r_switch)
            return (tabs - surface_t(f.r)) * profile_slope(f.r);
        return surface_r(tabs) - f.r;
    }

    bool contains(Vec3 x) const { return depth(x) > 0; }

    Vec3 surface_point(double t, double theta) const {
        double tabs = std::fabs(t);
        double r = surface_r(tabs);
        return ball_of_fermi(frame, t, r, theta);
    }
};

inline bool solid_contains(const SolidCatenoid& sc, Vec3 x) { return sc.contains(x); }

// Build the solid asymptotic to a disjoint pair. The branch (neck parameter)
// is chosen by area: among the catenoids realizing dL, take the one with the
// smaller truncated-area deficit; callers reject solutions whose deficit is
// nonnegative (not least-area).
inline std::optional<SolidCatenoid> solve_catenoid_for_pair(const SphereCircle& c1,
                                                            const SphereCircle& c2,
                                                            const ThresholdEstimates& th) {
    double d = plane_distance_dL(c1, c2);
    if (d <= 0 || d > th.d0) return std::nullopt;
    std::vector<double> necks = catenoids_for_distance(d, th);
    if (necks.empty()) return std::nullopt;
    double best_a = 0, best_def = std::numeric_limits<double>::infinity();
    for (double a : necks) {
        double def = cat::area_deficit(a);
        if (def < best_def) { best_def = def; best_a = a; }
    }
    SolidCatenoid sc;
    sc.solution.neck = best_a;
    sc.solution.curve = solve_generating_curve(best_a);
    sc.solution.dL = d;
    sc.solution.area_deficit = best_def;
    auto axis = coaxial_axis(c1, c2);
    sc.solution.axis = axis;
    sc.solution.boundary = canonical_disjoint_pair(c1, c2);
    sc.frame = axis_frame(axis.first, axis.second);

    // Reparametrize the axis so the waist (t = 0) sits midway between the two
    // plane crossings, which then land at t = +-dL/2 = +-t_inf.
    auto crossing_t = [&sc](const SphereCircle& c) {
        MinkV e = plane_spacelike_normal(c);
        double gp = mdot(sc.frame.P, e), gq = mdot(sc.frame.Q, e);
        return 0.5 * std::log(-gq / gp);
    };
    double t1 = crossing_t(sc.solution.boundary.first);
    double t2 = crossing_t(sc.solution.boundary.second);
    if (!(std::fabs(std::fabs(t1 - t2) - d) <= 1e-6))
        throw std::runtime_error("solve_catenoid_for_pair: plane crossings disagree with dL");
    double tm = 0.5 * (t1 + t2);
    sc.frame.P = mscale(std::exp(tm), sc.frame.P);
    sc.frame.Q = mscale(std::exp(-tm), sc.frame.Q);
    return sc;
}

// Asymptotic boundary circle of the surface end at t = +-t_inf, from three
// ideal directions.
inline SphereCircle asymptotic_circle(const SolidCatenoid& sc, int sign) {
    double t = sign >= 0 ? sc.solution.curve.t_inf : -sc.solution.curve.t_inf;
    SpherePoint p1 = ideal_of_fermi(sc.frame, t, 0.3);
    SpherePoint p2 = ideal_of_fermi(sc.frame, t, 2.4);
    SpherePoint p3 = ideal_of_fermi(sc.frame, t, 4.5);
    SpherePoint inside = sign >= 0 ? sc.frame.end_p : sc.frame.end_q;
    return circle_through(p1, p2, p3, inside);
}

}  // namespace qfm
