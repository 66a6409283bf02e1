#pragma once

#include <unordered_map>

#include "qfm/distances.hpp"

namespace qfm {

// Center spacing at which two caps of angular radius alpha meet at right
// angles: cos(gamma) = cos^2(alpha).
inline double chain_gamma(double alpha) {
    double c = std::cos(alpha);
    return std::acos(c * c);
}

// Oriented sub-arc of a circle: t runs from t0 to t1 (decreasing means the
// circle is traversed backwards).
struct PathArc {
    SphereCircle circle;
    double t0 = 0, t1 = 0;
};

struct SpherePath {
    std::vector<PathArc> arcs;  // closed: each arc's end meets the next one's start
};

inline double arc_speed(const PathArc& a) {
    return std::sqrt(std::max(0.0, 1.0 - a.circle.offset * a.circle.offset));
}

inline double arc_length(const PathArc& a) { return arc_speed(a) * std::fabs(a.t1 - a.t0); }

inline double path_length(const SpherePath& p) {
    double L = 0;
    for (const auto& a : p.arcs) L += arc_length(a);
    return L;
}

inline double wrap_2pi(double x) {
    double w = std::fmod(x, 2 * kPi);
    return w < 0 ? w + 2 * kPi : w;
}

// Forward march along a closed path by exact chord steps: each step lands at
// the first point ahead whose sphere distance from the step's start equals
// gamma. Within one circle the step is a closed form; crossing into a later
// arc solves dot(p, point(t)) = cos(gamma), again closed form.
struct PathWalker {
    const SpherePath* path = nullptr;
    size_t k = 0;
    double t = 0;
    double traveled = 0;

    SpherePoint point() const { return circle_point(path->arcs[k].circle, t); }

    SpherePoint step(double gamma) {
        const auto& arcs = path->arcs;
        double cg = std::cos(gamma);
        SpherePoint p = point();
        for (size_t hops = 0; hops <= arcs.size() + 2; ++hops) {
            const PathArc& a = arcs[k];
            double dir = a.t1 >= a.t0 ? 1.0 : -1.0;
            double window = dir > 0 ? a.t1 - t : t - a.t1;

            Vec3 u, v;
            tangent_basis(a.circle.normal, u, v);
            double s = arc_speed(a);
            double pu = s * dot(p, u), pv = s * dot(p, v);
            double A = a.circle.offset * dot(p, a.circle.normal);
            double R = std::hypot(pu, pv);
            if (R > 1e-15) {
                double w = (cg - A) / R;
                if (std::fabs(w) <= 1.0) {
                    double phi = std::atan2(pv, pu);
                    double d = std::acos(std::clamp(w, -1.0, 1.0));
                    double best = -1;
                    for (double cand : {phi + d, phi - d}) {
                        double fwd = wrap_2pi(dir * (cand - t));
                        if (fwd < 1e-12) continue;  // the step's own start point
                        if (fwd <= window + 1e-12 && (best < 0 || fwd < best)) best = fwd;
                    }
                    if (best > 0) {
                        t += dir * best;
                        traveled += s * best;
                        return point();
                    }
                }
            }
            traveled += s * window;
            k = (k + 1) % arcs.size();
            t = arcs[k].t0;
        }
        throw std::runtime_error("PathWalker::step: step spans the whole path");
    }
};

// Positions of n forward gamma-steps from the path start (the n-th should
// land back at the start when the chain closes); closure_gap reports the
// along-path overshoot of the n-th step past one full lap.
inline std::vector<SpherePoint> march_path(const SpherePath& path, double gamma, int n,
                                           double* closure_gap = nullptr) {
    PathWalker w{&path, 0, path.arcs[0].t0, 0};
    std::vector<SpherePoint> centers;
    centers.reserve(n);
    centers.push_back(w.point());
    for (int i = 1; i < n; ++i) centers.push_back(w.step(gamma));
    w.step(gamma);
    if (closure_gap) *closure_gap = w.traveled - path_length(path);
    return centers;
}

struct CoverChain {
    std::vector<SphereCircle> circles;  // cyclic order; designated disks are the caps
    double alpha = 0;
    double gamma = 0;
};

// Cover the closed path with an even number of equal caps whose neighbors
// meet at right angles: the count is the smallest even n admitting a radius
// at most alpha_max, and alpha is root-found so the chain closes exactly.
inline CoverChain cover_path(const SpherePath& path, double alpha_max) {
    if (path.arcs.empty()) throw std::runtime_error("cover_path: empty path");
    double L = path_length(path);
    int n = int(std::ceil(L / chain_gamma(alpha_max) - 1e-12));
    if (n % 2) ++n;
    if (n < 4) n = 4;

    auto gap = [&](double alpha) {
        double g;
        march_path(path, chain_gamma(alpha), n, &g);
        return g;
    };
    double hi = alpha_max;
    if (gap(hi) < 0) throw std::runtime_error("cover_path: count estimate too low");
    double lo = hi;
    for (int i = 0; i < 60 && gap(lo) > 0; ++i) lo *= 0.8;
    double alpha = brent_root(gap, lo, hi, 1e-14);

    // polish to the floating-point floor: the whole closure residual lands on
    // the final pair, where small caps amplify it by 1/sin^2(alpha)
    double g1 = gap(alpha);
    double h = 1e-9 * std::max(alpha, 1e-3);
    double slope = (gap(alpha + h) - g1) / h;
    for (int it = 0; it < 4 && g1 != 0 && slope > 0; ++it) {
        double next = alpha - g1 / slope;
        double g2 = gap(next);
        if (std::fabs(g2) >= std::fabs(g1)) break;
        alpha = next;
        g1 = g2;
    }

    CoverChain ch;
    ch.alpha = alpha;
    ch.gamma = chain_gamma(alpha);
    std::vector<SpherePoint> centers = march_path(path, ch.gamma, n);

    // The march leaves its whole closure residual on the final pair, and tiny
    // caps amplify a spacing error by 1/sin^2(alpha). Instead of chasing that
    // with alpha alone, give each cap its own radius and solve
    // cos(theta_i) = cos(a_i) cos(a_{i+1}) around the loop: in x_i = log cos a_i
    // the system is cyclic linear with an alternating kernel, so the seam
    // spreads evenly as a 1/n ramp and every pair ends up orthogonal to
    // machine precision.
    double X = std::log(std::cos(alpha));
    std::vector<double> d(n), p(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double th = angle_between(centers[i], centers[(i + 1) % n]);
        d[i] = std::log(std::cos(th)) - 2 * X;
    }
    for (int i = 0; i + 1 < n; ++i) p[i + 1] = d[i] - p[i];
    double R = p[n - 1] - d[n - 1];  // seam inconsistency, y_0 drops out for even n
    double mean_alt = 0;
    for (int i = 0; i < n; ++i) mean_alt += (i % 2 ? -p[i] : p[i]);
    mean_alt /= n;
    double g = R / n, s0 = -(n - 1) * g / 2;
    for (int i = 0; i < n; ++i) {
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        double y = p[i] + sign * (s0 + i * g - mean_alt);
        ch.circles.push_back({centers[i], std::exp(X + y)});
    }
    return ch;
}

// Replace every sharp junction of the closed path by the geodesic chord
// between the points `cut` before and after it (a 90-degree corner becomes
// two 135-degree ones, which keeps next-nearest chain caps disjoint).
inline SpherePath chamfered(const SpherePath& path, double cut, double min_turn = 0.05) {
    size_t m = path.arcs.size();
    auto endpoint = [](const PathArc& a, double tt) { return circle_point(a.circle, tt); };
    auto tangent = [](const PathArc& a, double tt) {
        double dir = a.t1 >= a.t0 ? 1.0 : -1.0;
        return normalized(dir * cross(a.circle.normal, circle_point(a.circle, tt)));
    };

    std::vector<PathArc> arcs = path.arcs;
    std::vector<bool> sharp(m);
    for (size_t i = 0; i < m; ++i) {
        const PathArc& a = arcs[i];
        const PathArc& b = arcs[(i + 1) % m];
        if (dist(endpoint(a, a.t1), endpoint(b, b.t0)) > 1e-9)
            throw std::runtime_error("chamfered: path is not closed");
        sharp[i] = angle_between(tangent(a, a.t1), tangent(b, b.t0)) > min_turn;
    }

    // trim the arcs around each sharp junction
    for (size_t i = 0; i < m; ++i) {
        if (!sharp[i]) continue;
        PathArc& a = arcs[i];
        PathArc& b = arcs[(i + 1) % m];
        double da = cut / arc_speed(a), db = cut / arc_speed(b);
        if (std::fabs(a.t1 - a.t0) <= da || std::fabs(b.t1 - b.t0) <= db)
            throw std::runtime_error("chamfered: cut exceeds an arc length");
        a.t1 -= (a.t1 >= a.t0 ? da : -da);
        b.t0 += (b.t1 >= b.t0 ? db : -db);
    }

    SpherePath out;
    for (size_t i = 0; i < m; ++i) {
        out.arcs.push_back(arcs[i]);
        if (!sharp[i]) continue;
        SpherePoint p = endpoint(arcs[i], arcs[i].t1);
        SpherePoint q = endpoint(arcs[(i + 1) % m], arcs[(i + 1) % m].t0);
        Vec3 nrm = cross(p, q);
        if (norm(nrm) < 1e-12) continue;  // trimmed endpoints coincide
        SphereCircle gc{normalized(nrm), 0.0};
        Vec3 u, v;
        tangent_basis(gc.normal, u, v);
        double ta = std::atan2(dot(p, v), dot(p, u));
        double tb = std::atan2(dot(q, v), dot(q, u));
        double delta = wrap_2pi(tb - ta);
        if (delta > kPi) delta -= 2 * kPi;  // short way round
        out.arcs.push_back({gc, ta, ta + delta});
    }
    return out;
}

// Uniform hash grid on unit-sphere points for neighborhood queries.
struct SphereGrid {
    double cell = 0.1;
    std::unordered_map<uint64_t, std::vector<int>> buckets;

    explicit SphereGrid(double cell_size) : cell(cell_size) {}

    uint64_t key(Vec3 p) const {
        auto q = [&](double x) { return uint64_t(int64_t((x + 2.0) / cell)) & 0x1fffff; };
        return q(p.x) | (q(p.y) << 21) | (q(p.z) << 42);
    }

    void insert(int id, Vec3 p) { buckets[key(p)].push_back(id); }

    template <class F>
    void for_near(Vec3 p, F f) const {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    Vec3 q{p.x + dx * cell, p.y + dy * cell, p.z + dz * cell};
                    auto it = buckets.find(key(q));
                    if (it == buckets.end()) continue;
                    for (int id : it->second) f(id);
                }
    }
};

struct ChainReport {
    bool ok = true;
    int i = -1, j = -1;
    std::string reason;
    double worst_orthogonality = 0;  // max |cos angle| over adjacent pairs
    double min_gap = kPi;            // min center gap minus 2 alpha, non-adjacent pairs
    double cover_margin = kPi;       // min over path samples of alpha - nearest center dist
};

// Chain sanity: adjacent caps orthogonal, non-adjacent caps disjoint (with
// the reported margin), and the path inside the union of caps.
inline ChainReport validate_chain(const CoverChain& ch, const SpherePath& path,
                                  double ortho_tol = 1e-9) {
    ChainReport rep;
    int n = int(ch.circles.size());
    for (int i = 0; i < n; ++i) {
        double c = circle_cos_angle(ch.circles[i], ch.circles[(i + 1) % n]);
        rep.worst_orthogonality = std::max(rep.worst_orthogonality, std::fabs(c));
        if (std::fabs(c) > ortho_tol) {
            rep.ok = false; rep.i = i; rep.j = (i + 1) % n;
            rep.reason = "adjacent caps not orthogonal";
            return rep;
        }
    }

    double chord = 2 * std::sin(std::min(1.0, ch.alpha));  // search radius for overlaps
    SphereGrid grid(std::max(2.2 * chord, 1e-4));
    for (int i = 0; i < n; ++i) grid.insert(i, ch.circles[i].cap_center());
    for (int i = 0; i < n; ++i) {
        grid.for_near(ch.circles[i].cap_center(), [&](int j) {
            if (j <= i) return;
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) return;
            double gap = angle_between(ch.circles[i].cap_center(), ch.circles[j].cap_center()) -
                         2 * ch.alpha;
            if (gap < rep.min_gap) { rep.min_gap = gap; }
            if (gap <= 0 && rep.ok) {
                rep.ok = false; rep.i = i; rep.j = j;
                rep.reason = "non-adjacent caps overlap";
            }
        });
        if (!rep.ok) return rep;
    }

    // walk the path at a fine pitch and check each sample is inside some cap
    double pitch = ch.gamma / 8;
    for (const PathArc& a : path.arcs) {
        double len = arc_length(a);
        int m = std::max(2, int(std::ceil(len / pitch)) + 1);
        for (int s = 0; s <= m; ++s) {
            double tt = a.t0 + (a.t1 - a.t0) * s / m;
            SpherePoint p = circle_point(a.circle, tt);
            double best = kPi;
            grid.for_near(p, [&](int j) {
                best = std::min(best, angle_between(p, ch.circles[j].cap_center()));
            });
            double margin = ch.alpha - best;
            rep.cover_margin = std::min(rep.cover_margin, margin);
            if (margin <= 0) {
                rep.ok = false;
                rep.reason = "path escapes the cap cover";
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace qfm
