#pragma once

#include <algorithm>
#include <array>

#include "qfm/chain.hpp"
#include "qfm/mobius.hpp"

namespace qfm {

// Group generated by the inversions in a cyclic chain of caps. Neighbors in
// the chain are expected to meet at right angles, so adjacent generators
// commute; everything downstream (normal forms, relations, genus) leans on
// that structure.
struct InversionGroup {
    std::vector<SphereCircle> circles;
    std::vector<MobiusMap> gens;

    int size() const { return int(circles.size()); }

    bool adjacent(int i, int j) const {
        int n = size();
        int d = std::abs(i - j);
        return d == 1 || d == n - 1;
    }
};

inline InversionGroup make_inversion_group(const std::vector<SphereCircle>& chain) {
    if (chain.size() < 4 || chain.size() % 2)
        throw std::runtime_error("make_inversion_group: need an even chain of at least 4 caps");
    InversionGroup g;
    g.circles = chain;
    for (const auto& c : chain) g.gens.push_back(inversion_in_circle(c));
    return g;
}

struct RelationReport {
    bool ok = true;
    int bad_index = -1;
    double worst_pair = 0;  // max defect of (f_i f_{i+1})^2 over adjacent pairs
    double cycle = 0;       // defect of prod_i (f_i f_{i+1}), which telescopes to 1
};

inline RelationReport verify_relations(const InversionGroup& G, double tol = 1e-9) {
    RelationReport rep;
    int n = G.size();
    // The telescoping product is accumulated in extended precision: partial
    // products are loxodromic with entries in the hundreds, so plain double
    // composition loses ~3 digits per decade of chain length and the check
    // would measure roundoff instead of the group relation.
    using C = std::complex<long double>;
    std::array<C, 4> tele{C(1), C(0), C(0), C(1)};
    for (int i = 0; i < n; ++i) {
        MobiusMap p = compose(G.gens[i], G.gens[(i + 1) % n]);
        double defect = identity_defect(compose(p, p));
        if (defect > rep.worst_pair) rep.worst_pair = defect;
        if (defect > tol && rep.ok) {
            rep.ok = false;
            rep.bad_index = i;
        }
        // Re-form the pair product from the generator entries at extended
        // precision too: f and g are inversions, so f o g multiplies f's
        // matrix by conj(g)'s entrywise.
        const MobiusMap& f = G.gens[i];
        const MobiusMap& g = G.gens[(i + 1) % n];
        std::array<C, 4> a{C(f.a), C(f.b), C(f.c), C(f.d)};
        std::array<C, 4> b{C(std::conj(g.a)), C(std::conj(g.b)), C(std::conj(g.c)),
                           C(std::conj(g.d))};
        std::array<C, 4> q{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                           a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
        std::array<C, 4> r{tele[0] * q[0] + tele[1] * q[2], tele[0] * q[1] + tele[1] * q[3],
                           tele[2] * q[0] + tele[3] * q[2], tele[2] * q[1] + tele[3] * q[3]};
        long double s = std::sqrt(std::abs(r[0] * r[3] - r[1] * r[2]));
        for (auto& e : r) e /= s;
        tele = r;
    }
    auto dev = [&](long double s) {
        return double(std::abs(tele[0] - s) + std::abs(tele[1]) + std::abs(tele[2]) +
                      std::abs(tele[3] - s));
    };
    rep.cycle = std::min(dev(1.0L), dev(-1.0L));
    if (rep.cycle > tol * n) rep.ok = false;
    return rep;
}

// Genus of the surface carried by the index-four torsion-free subgroup of the
// right-angled chain group on n caps.
inline int chain_genus(int n) {
    if (n < 4 || n % 2) throw std::runtime_error("chain_genus: need an even count >= 4");
    return n / 2 - 1;
}

// Euler characteristic of the mirror-boundary polygon orbifold with n right
// corners; 4 * orbifold_euler(n) == 2 - 2 * chain_genus(n).
inline double orbifold_euler(int n) { return 1.0 - n / 4.0; }

// Shortlex normal form over the chain group: appending j must neither cancel
// against an equal letter it commutes past, nor hop left over a commuting
// larger letter. Adjacent chain indices (mod n) are the commuting pairs.
inline bool shortlex_legal(const std::vector<int>& word, int j, int n) {
    for (int p = int(word.size()) - 1; p >= 0; --p) {
        int l = word[p];
        if (l == j) return false;
        int d = std::abs(l - j);
        if (d != 1 && d != n - 1) return true;
        if (l > j) return false;
    }
    return true;
}

// All shortlex-canonical words up to max_len (small chains only; testing aid).
inline std::vector<std::vector<int>> canonical_words(int n, int max_len) {
    std::vector<std::vector<int>> out;
    std::vector<int> w;
    auto rec = [&](auto&& self) -> void {
        out.push_back(w);
        if (int(w.size()) == max_len) return;
        for (int j = 0; j < n; ++j) {
            if (!shortlex_legal(w, j, n)) continue;
            w.push_back(j);
            self(self);
            w.pop_back();
        }
    };
    rec(rec);
    return out;
}

struct Cap {
    Vec3 center{0, 0, 1};
    double radius = 0;
};

inline Cap merge_caps(const Cap& a, const Cap& b) {
    double d = angle_between(a.center, b.center);
    if (a.radius >= d + b.radius) return a;
    if (b.radius >= d + a.radius) return b;
    double r = std::min(kPi, (d + a.radius + b.radius) / 2);
    if (d < 1e-14) return {a.center, r};
    Vec3 w = normalized(b.center - std::cos(d) * a.center);
    double phi = r - a.radius;
    return {std::cos(phi) * a.center + std::sin(phi) * w, r};
}

// Balanced tree of bounding caps over the cyclic chain; `expanded` widens each
// node by the two leaves just outside its range, which is where a subtree's
// points can still spill through a commuting neighbor.
struct CapTree {
    struct Node {
        int lo = 0, hi = 0, left = -1, right = -1;
        Cap bound, expanded;
    };
    std::vector<Node> nodes;
    int root = -1;

    static CapTree build(const std::vector<SphereCircle>& circles) {
        int n = int(circles.size());
        std::vector<Cap> leaf(n);
        for (int i = 0; i < n; ++i)
            leaf[i] = {circles[i].cap_center(), circles[i].cap_radius()};
        CapTree t;
        t.root = t.build_range(0, n, leaf);
        for (auto& nd : t.nodes) {
            nd.expanded = merge_caps(nd.bound, leaf[(nd.lo + n - 1) % n]);
            nd.expanded = merge_caps(nd.expanded, leaf[nd.hi % n]);
        }
        return t;
    }

  private:
    int build_range(int lo, int hi, const std::vector<Cap>& leaf) {
        int idx = int(nodes.size());
        nodes.push_back({lo, hi, -1, -1, {}, {}});
        if (hi - lo == 1) {
            nodes[idx].bound = leaf[lo];
            return idx;
        }
        int mid = (lo + hi) / 2;
        int l = build_range(lo, mid, leaf);
        int r = build_range(mid, hi, leaf);
        nodes[idx].left = l;
        nodes[idx].right = r;
        nodes[idx].bound = merge_caps(nodes[l].bound, nodes[r].bound);
        return idx;
    }
};

inline Cap map_cap(const MobiusMap& m, const Cap& c) {
    if (c.radius >= 3.0) return {c.center, kPi};  // effectively the whole sphere
    SphereCircle img = map_circle(m, circle_from_cap(c.center, c.radius));
    return {img.cap_center(), img.cap_radius()};
}

struct LimitSetParams {
    double prune_tol = 1e-4;
    int max_depth = 40;
    size_t max_points = 20'000'000;
    bool batch = true;  // cut whole generator ranges when their image is tiny
};

struct LimitSetCloud {
    std::vector<Vec3> points;
    double prune_tol = 0;
    int depth_reached = 0;    // longest word expanded or emitted
    size_t nodes_visited = 0;
    size_t truncated = 0;     // subtrees cut by max_depth before they shrank
};

// Accumulation points of the group orbit, enumerated over shortlex-canonical
// words. Each word's points sit in the image of the designated disk of its
// last letter under the rest of the word; a branch is emitted as one point
// once that tracked disk shrinks below prune_tol.
class LimitSetEnumerator {
  public:
    LimitSetEnumerator(const InversionGroup& g, const LimitSetParams& p)
        : G(g), P(p), tree(CapTree::build(g.circles)) {}

    LimitSetCloud run() {
        cloud = LimitSetCloud{};
        cloud.prune_tol = P.prune_tol;
        word.clear();
        visit(tree.root, MobiusMap::identity(), 0);
        double q = std::max(P.prune_tol / 4, 1e-13);
        std::sort(cloud.points.begin(), cloud.points.end(), [](const Vec3& a, const Vec3& b) {
            if (a.x != b.x) return a.x < b.x;
            if (a.y != b.y) return a.y < b.y;
            return a.z < b.z;
        });
        auto cell = [q](const Vec3& v) {
            return std::array<long long, 3>{llround(v.x / q), llround(v.y / q), llround(v.z / q)};
        };
        cloud.points.erase(std::unique(cloud.points.begin(), cloud.points.end(),
                                       [&](const Vec3& a, const Vec3& b) { return cell(a) == cell(b); }),
                           cloud.points.end());
        return std::move(cloud);
    }

  private:
    const InversionGroup& G;
    LimitSetParams P;
    CapTree tree;
    LimitSetCloud cloud;
    std::vector<int> word;

    // letters whose legality depends on the word; everything else is legal
    bool touches_window(int lo, int hi) const {
        int n = G.size();
        int last = word.back();
        for (int w : {(last + n - 1) % n, last, (last + 1) % n})
            if (w >= lo && w < hi) return true;
        return false;
    }

    void emit(Vec3 p, int depth) {
        if (cloud.points.size() >= P.max_points)
            throw std::runtime_error("limit_set: point budget exceeded");
        cloud.points.push_back(p);
        if (depth > cloud.depth_reached) cloud.depth_reached = depth;
    }

    void visit(int node_idx, const MobiusMap& M, int depth) {
        const CapTree::Node& nd = tree.nodes[node_idx];
        ++cloud.nodes_visited;
        if (nd.hi - nd.lo == 1) {
            leaf(nd.lo, M, depth);
            return;
        }
        if (P.batch && depth > 0 && !touches_window(nd.lo, nd.hi)) {
            Cap img;
            bool tiny;
            try {
                img = map_cap(M, nd.expanded);
                tiny = img.radius <= P.prune_tol;
            } catch (const std::exception&) {
                // the circle fit only degenerates when the image is microscopic
                img.center = apply(M, nd.expanded.center);
                tiny = true;
            }
            if (tiny) {
                emit(img.center, depth + 1);
                return;
            }
        }
        visit(nd.left, M, depth);
        visit(nd.right, M, depth);
    }

    void leaf(int j, const MobiusMap& M, int depth) {
        if (depth > 0 && !shortlex_legal(word, j, G.size())) return;
        SphereCircle img;
        if (depth == 0) {
            img = G.circles[j];
        } else {
            try {
                img = map_circle(M, G.circles[j]);
            } catch (const std::exception&) {
                emit(apply(M, G.circles[j].cap_center()), depth + 1);
                return;
            }
        }
        double r = img.cap_radius();
        if (r <= P.prune_tol) {
            emit(img.cap_center(), depth + 1);
            return;
        }
        if (depth + 1 >= P.max_depth) {
            ++cloud.truncated;
            emit(img.cap_center(), depth + 1);
            return;
        }
        word.push_back(j);
        visit(tree.root, compose(M, G.gens[j]).normalized(), depth + 1);
        word.pop_back();
    }
};

inline LimitSetCloud limit_set(const InversionGroup& G, const LimitSetParams& P = {}) {
    return LimitSetEnumerator(G, P).run();
}

struct BandReport {
    bool ok = true;
    double min_margin = 1;  // min over points of the best cap margin, in dot units
    size_t outside = 0;
};

// Every limit point must lie inside some cap of the chain.
inline BandReport band_containment(const InversionGroup& G, const std::vector<Vec3>& pts,
                                   double tol = 0) {
    double max_r = 0;
    for (const auto& c : G.circles) max_r = std::max(max_r, c.cap_radius());
    SphereGrid grid(std::max(1e-4, 2.2 * std::sin(std::min(max_r, 1.2))));
    for (int i = 0; i < G.size(); ++i) grid.insert(i, G.circles[i].cap_center());

    BandReport rep;
    for (const Vec3& p : pts) {
        double best = -2;
        grid.for_near(p, [&](int j) {
            best = std::max(best, dot(p, G.circles[j].normal) - G.circles[j].offset);
        });
        rep.min_margin = std::min(rep.min_margin, best);
        if (best < -tol) {
            rep.ok = false;
            ++rep.outside;
        }
    }
    return rep;
}

}  // namespace qfm
