#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfm {

// Shortest round-trip decimal form, locale-independent. Used for all JSON output.
inline std::string fmt_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Fixed form for SVG coordinates.
inline std::string fmt_fixed(double v, int places = 6) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, places);
    return std::string(buf, res.ptr);
}

inline double sq(double x) { return x * x; }

constexpr double kPi = 3.14159265358979323846;

// Deterministic PRNG for sampling in tests and spot checks.
struct SplitMix64 {
    uint64_t s;
    explicit SplitMix64(uint64_t seed) : s(seed) {}
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Brent root finder on [a,b] with f(a), f(b) of opposite sign.
inline double brent_root(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-13, int maxit = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0) throw std::runtime_error("brent_root: no sign change");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < maxit; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2 * 1e-16 * std::fabs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2 * xm * s;
                q = 1 - s;
            } else {
                double r = fb / fc;
                q = fa / fc;
                p = s * (2 * xm * q * (q - r) - (b - a) * (r - 1));
                q = (q - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q;
            p = std::fabs(p);
            if (2 * p < std::min(3 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) { c = a; fc = fa; d = b - a; e = d; }
    }
    return b;
}

// Golden-section maximum of a unimodal f on [a,b]; returns argmax.
inline double golden_max(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-12) {
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Adaptive Simpson quadrature.
namespace detail {
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 48) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Dormand-Prince 5(4) adaptive step integrator for small ODE systems.
// Integrates y' = f(x, y) from x0 to x1; stop(x, y) may end integration early.
struct OdeResult {
    std::vector<double> xs;
    std::vector<std::vector<double>> ys;
    bool stopped = false;
};

inline OdeResult rk45(const std::function<void(double, const double*, double*)>& f,
                      double x0, double x1, std::vector<double> y0,
                      double rtol = 1e-12, double atol = 1e-14,
                      const std::function<bool(double, const double*)>& stop = nullptr) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const size_t n = y0.size();
    OdeResult out;
    double x = x0;
    std::vector<double> y = std::move(y0);
    double dir = (x1 >= x0) ? 1.0 : -1.0;
    double h = dir * std::min(1e-3, std::fabs(x1 - x0));
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), ynew(n);
    out.xs.push_back(x);
    out.ys.push_back(y);
    f(x, y.data(), k1.data());
    int iter_guard = 0;
    while (dir * (x1 - x) > 1e-15 * std::fabs(x1) + 1e-300 && ++iter_guard < 2000000) {
        if (dir * (x + h - x1) > 0) h = x1 - x;
        for (size_t i = 0; i < n; ++i) yt[i] = y[i] + h * a21 * k1[i];
        f(x + c2 * h, yt.data(), k2.data());
        for (size_t i = 0; i < n; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(x + c3 * h, yt.data(), k3.data());
        for (size_t i = 0; i < n; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(x + c4 * h, yt.data(), k4.data());
        for (size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(x + c5 * h, yt.data(), k5.data());
        for (size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(x + h, yt.data(), k6.data());
        for (size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(x + h, ynew.data(), k7.data());
        double err = 0;
        for (size_t i = 0; i < n; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += sq(e / sc);
        }
        err = std::sqrt(err / n);
        if (err <= 1.0) {
            x += h;
            y = ynew;
            k1 = k7;
            out.xs.push_back(x);
            out.ys.push_back(y);
            if (stop && stop(x, y.data())) { out.stopped = true; break; }
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::min(5.0, std::max(0.2, fac));
    }
    return out;
}

}  // namespace qfm
