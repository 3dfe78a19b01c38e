#pragma once

#include "cylfloer/action.hpp"
#include "cylfloer/gf2.hpp"

#include <climits>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace cylfloer {

inline constexpr int kDefaultMaxWraps = 3;

// Immersed boundary of a candidate lune: along the base circle from q to p,
// then along the curve from p back to q, each possibly wrapping.
struct BoundaryData {
    int q = 0, p = 0;      // points, 0-based
    bool base_ccw = true;  // base path direction: ccw = increasing point index
    int base_wraps = 0;
    bool curve_fwd = true; // curve path direction relative to lcycle
    int curve_wraps = 0;
};

// Accepted lune: a nonnegative 2-chain nu whose boundary is the given 1-chain,
// vanishing on both roots, with the corner alternating sums +1 at the source,
// -1 at the sink and 0 elsewhere.
struct Lune {
    BoundaryData boundary;
    std::vector<long long> nu; // per face
    Rational area;
};

namespace detail {

// Quadrant coverage pattern (NE, NW, SW, SE) of one sheet of the disc.
using Quad = std::array<long long, 4>;

// A smooth lune decomposes, over a small disc around each intersection point,
// into sheets of known shapes: full interior sheets, straight boundary
// transits along one of the two curves (interior on the left of the travel
// direction), and a single convex corner at each of q and p. The transit
// counts and directions are forced by the boundary data, so the quadrant
// multiplicities minus the forced sheets must be a constant nonnegative
// vector. This is what distinguishes genuine immersions from 2-chains with
// reflex corners; the alternating corner sums alone do not.
struct SheetRules {
    // headings in quarter turns: 0 = east, 1 = north, 2 = west, 3 = south
    static Quad transit_pattern(int heading) {
        switch (heading) {
            case 0: return {1, 1, 0, 0}; // east: interior north
            case 2: return {0, 0, 1, 1}; // west: interior south
            case 1: return {0, 1, 1, 0}; // north: interior west
            default: return {1, 0, 0, 1}; // south: interior east
        }
    }
    static Quad corner_pattern(int germ_a, int germ_b) {
        // germ directions, unordered pair of adjacent compass directions
        int lo = std::min(germ_a, germ_b), hi = std::max(germ_a, germ_b);
        if (lo == 0 && hi == 1) return {1, 0, 0, 0}; // NE
        if (lo == 1 && hi == 2) return {0, 1, 0, 0}; // NW
        if (lo == 2 && hi == 3) return {0, 0, 1, 0}; // SW
        if (lo == 0 && hi == 3) return {0, 0, 0, 1}; // SE
        return {-1, -1, -1, -1};
    }
};

} // namespace detail

namespace detail {

// A lune is simply connected, so it lives in the universal cover of the
// cylinder: the strip with the arrangement repeated every m units. Faces of
// the strip are the two root faces (each lifts connected) plus one copy per
// period of every disc face, identified by the lift of its ceiling arc.
struct Lift {
    const Arrangement& arr;
    explicit Lift(const Arrangement& a) : arr(a) {}

    static constexpr long long kTop = -1, kBot = -2;
    static long long encode(int arc, long long copy) { return arc * 8192ll + (copy + 4096); }

    static long long floordiv(long long x, long long m) {
        return x >= 0 ? x / m : -((-x + m - 1) / m);
    }

    // Face lift on one side of the lifted segment covering [x, x+1].
    long long seg_face(long long x, bool up_side) const {
        long long k = floordiv(x, arr.m);
        int j = static_cast<int>(x - k * arr.m);
        int f = up_side ? arr.seg_up[j] : arr.seg_down[j];
        if (arr.faces[f].is_root) return arr.faces[f].upper ? kTop : kBot;
        int c = arr.ceiling_arc[f];
        return encode(c, k - (j < arr.arcs[c].block_lo ? 1 : 0));
    }

    // Face lift outside the lifted arc (i, k).
    long long arc_outside(int i, long long k) const {
        int f = arr.arcs[i].outside;
        if (arr.faces[f].is_root) return arr.faces[f].upper ? kTop : kBot;
        int c = arr.ceiling_arc[f];
        return encode(c, k - (arr.arcs[i].block_lo < arr.arcs[c].block_lo ? 1 : 0));
    }

    std::pair<long long, long long> arc_sides(int i, long long k) const {
        long long in = encode(i, k), out = arc_outside(i, k);
        return arr.arcs[i].left == arr.arcs[i].inside ? std::pair{in, out} : std::pair{out, in};
    }
};

// Full acceptance test for one boundary choice, developed in the cover.
// Returns the downstairs face chain when a smooth lune with this boundary
// exists: the lifted boundary must close up, both corners must turn left by a
// quarter, the corner-adjacent curve points must avoid the base path, the
// lifted coverage must be nonnegative and vanish on the roots, and at every
// lifted point the quadrant counts must decompose into interior sheets plus
// the forced transit sheets and corner.
inline std::optional<std::vector<long long>> accept_lune(const Arrangement& arr,
                                                         const BoundaryData& bd) {
    int m = arr.m;
    Lift lift(arr);

    // Base path in the cover: monotone, one lifted point per visit.
    long long x_q = bd.q;
    long long base_steps = (bd.base_ccw ? (bd.p - bd.q + m) % m : (bd.q - bd.p + m) % m) +
                           static_cast<long long>(bd.base_wraps) * m;
    long long x_p = bd.base_ccw ? x_q + base_steps : x_q - base_steps;

    // Curve path in the cover, from the lifted p back towards q.
    long long curve_hops =
        (bd.curve_fwd ? (arr.lpos[bd.q] - arr.lpos[bd.p] + m) % m
                      : (arr.lpos[bd.p] - arr.lpos[bd.q] + m) % m) +
        static_cast<long long>(bd.curve_wraps) * m;
    std::map<std::pair<int, long long>, long long> xi_arc; // (arc, copy) -> signed multiplicity
    std::set<long long> curve_interior;
    long long x = x_p;
    long long first_interior = LLONG_MIN, last_interior = LLONG_MIN;
    long long turning = 0; // arc turning in quarter turns of pi
    {
        int z = bd.p;
        for (long long h = 0; h < curve_hops; ++h) {
            int t = bd.curve_fwd ? arr.lpos[z] : (arr.lpos[z] + m - 1) % m;
            int arc = arr.step_arc[t];
            long long dx = bd.curve_fwd ? arr.step_dx[t] : -arr.step_dx[t];
            long long x_lo = std::min(x, x + dx);
            long long copy = (x_lo - arr.arcs[arc].block_lo) / m;
            xi_arc[{arc, copy}] += bd.curve_fwd ? 1 : -1;
            turning += (arr.arcs[arc].upper == (dx < 0)) ? 1 : -1;
            x += dx;
            z = arr.lcycle[bd.curve_fwd ? (arr.lpos[z] + 1) % m : (arr.lpos[z] + m - 1) % m];
            if (h + 1 < curve_hops) {
                curve_interior.insert(x);
                if (first_interior == LLONG_MIN) first_interior = x;
                last_interior = x;
            }
        }
        if (x != x_q || z != bd.q) return std::nullopt; // does not close in the cover
    }
    // Whitney index of the boundary: each arc contributes +-pi, the straight
    // base part nothing, each convex corner pi/2. An immersed disc needs a
    // total turning of exactly 2 pi.
    if (turning != 1) return std::nullopt;

    // Corner convexity. Headings in quarter turns (0 E, 1 N, 2 W, 3 S); each
    // curve visit arrives through the germ of its incoming arc.
    int base_heading = bd.base_ccw ? 0 : 2;
    auto arc_into = [&](int z) {
        return bd.curve_fwd ? arr.step_arc[(arr.lpos[z] + m - 1) % m] : arr.step_arc[arr.lpos[z]];
    };
    auto arc_out_of = [&](int z) {
        return bd.curve_fwd ? arr.step_arc[arr.lpos[z]] : arr.step_arc[(arr.lpos[z] + m - 1) % m];
    };
    auto curve_in_heading = [&](int z) { return arr.arcs[arc_into(z)].upper ? 3 : 1; };
    auto curve_out_heading = [&](int z) { return arr.arcs[arc_out_of(z)].upper ? 1 : 3; };
    int hin_q = curve_in_heading(bd.q), hout_q = base_heading;
    int hin_p = base_heading, hout_p = curve_out_heading(bd.p);
    if ((hout_q - hin_q + 4) % 4 != 1) return std::nullopt;
    if ((hout_p - hin_p + 4) % 4 != 1) return std::nullopt;
    Quad corner_q = SheetRules::corner_pattern((hin_q + 2) % 4, hout_q);
    Quad corner_p = SheetRules::corner_pattern((hin_p + 2) % 4, hout_p);

    // Pinch rule: the lifted curve points next to the corners must not lie on
    // the lifted base path, or the corner sheet collapses.
    long long base_lo = std::min(x_q, x_p), base_hi = std::max(x_q, x_p);
    if (first_interior != LLONG_MIN &&
        ((first_interior >= base_lo && first_interior <= base_hi) ||
         (last_interior >= base_lo && last_interior <= base_hi)))
        return std::nullopt;

    // Solve the lifted coverage by propagation from the top root.
    long long hull_lo = base_lo, hull_hi = base_hi;
    for (const auto& [key, mult] : xi_arc) {
        long long lo = arr.arcs[key.first].block_lo + key.second * m;
        hull_lo = std::min(hull_lo, lo);
        hull_hi = std::max(hull_hi, lo + arr.arcs[key.first].block_count);
    }
    struct Edge {
        long long a, b;   // nu[a] - nu[b] = delta
        long long delta;
    };
    std::vector<Edge> edges;
    for (long long xx = hull_lo - m; xx < hull_hi + m; ++xx) {
        long long delta = 0;
        if (xx >= base_lo && xx < base_hi) delta = bd.base_ccw ? 1 : -1;
        edges.push_back({lift.seg_face(xx, true), lift.seg_face(xx, false), delta});
    }
    for (int i = 0; i < static_cast<int>(arr.arcs.size()); ++i) {
        const Arc& arc = arr.arcs[i];
        long long k0 = Lift::floordiv(hull_lo - m - arc.block_lo, m);
        long long k1 = Lift::floordiv(hull_hi + m - arc.block_lo, m);
        for (long long k = k0; k <= k1; ++k) {
            auto [l, r] = lift.arc_sides(i, k);
            auto it = xi_arc.find({i, k});
            edges.push_back({l, r, it == xi_arc.end() ? 0 : it->second});
        }
    }
    std::map<long long, long long> nu_lift;
    nu_lift[Lift::kTop] = 0;
    {
        std::map<long long, std::vector<std::pair<long long, long long>>> adj; // face -> (face, delta to add)
        for (const auto& e : edges) {
            adj[e.a].push_back({e.b, -e.delta});
            adj[e.b].push_back({e.a, e.delta});
        }
        std::vector<long long> stack = {Lift::kTop};
        while (!stack.empty()) {
            long long f = stack.back();
            stack.pop_back();
            long long base_val = nu_lift.at(f);
            for (auto [g, d] : adj[f]) {
                auto it = nu_lift.find(g);
                if (it == nu_lift.end()) {
                    nu_lift[g] = base_val + d;
                    stack.push_back(g);
                } else if (it->second != base_val + d) {
                    return std::nullopt;
                }
            }
        }
    }
    for (const auto& e : edges) {
        auto ia = nu_lift.find(e.a), ib = nu_lift.find(e.b);
        long long va = ia == nu_lift.end() ? 0 : ia->second;
        long long vb = ib == nu_lift.end() ? 0 : ib->second;
        if (va - vb != e.delta) return std::nullopt;
    }
    if (nu_lift.count(Lift::kBot) && nu_lift.at(Lift::kBot) != 0) return std::nullopt;
    for (const auto& [f, v] : nu_lift) {
        if (v < 0) return std::nullopt;
        if (f >= 0 && v != 0) {
            // A covered face lies entirely inside the image, whose x-range is
            // the boundary hull.
            int arc = static_cast<int>(f / 8192);
            long long copy = f % 8192 - 4096;
            long long lo = arr.arcs[arc].block_lo + copy * m;
            if (lo < hull_lo || lo + arr.arcs[arc].block_count > hull_hi) return std::nullopt;
        }
    }

    // Sheet decomposition at every lifted point of the hull.
    Quad p0 = SheetRules::transit_pattern(base_heading);
    for (long long xx = hull_lo - 1; xx <= hull_hi + 1; ++xx) {
        long long quads[4] = {0, 0, 0, 0};
        long long ids[4] = {lift.seg_face(xx, true), lift.seg_face(xx - 1, true),
                            lift.seg_face(xx - 1, false), lift.seg_face(xx, false)};
        for (int c = 0; c < 4; ++c) {
            auto it = nu_lift.find(ids[c]);
            quads[c] = it == nu_lift.end() ? 0 : it->second;
        }
        long long t0 = (xx > base_lo && xx < base_hi) ? 1 : 0;
        long long tl = curve_interior.count(xx) ? 1 : 0;
        int z = static_cast<int>(((xx % m) + m) % m);
        Quad pl = SheetRules::transit_pattern(curve_in_heading(z));
        long long rest[4];
        for (int c = 0; c < 4; ++c) {
            long long expected = t0 * p0[c] + tl * pl[c];
            if (xx == x_q) expected += corner_q[c];
            if (xx == x_p) expected += corner_p[c];
            rest[c] = quads[c] - expected;
        }
        if (rest[0] < 0 || rest[0] != rest[1] || rest[0] != rest[2] || rest[0] != rest[3])
            return std::nullopt;
    }

    // Project down.
    std::vector<long long> nu(arr.faces.size(), 0);
    for (const auto& [f, v] : nu_lift) {
        if (f < 0 || v == 0) continue;
        nu[arr.arcs[static_cast<int>(f / 8192)].inside] += v;
    }
    return nu;
}

} // namespace detail

// All smooth lunes from q to p with boundary wrapping at most maxWraps times.
// Empty when none exists; q == p is rejected.
inline std::vector<Lune> enumerate_lunes(const Arrangement& arr, const ActionTable& actions,
                                         int q, int p, int max_wraps = kDefaultMaxWraps) {
    if (q == p) throw Error("enumerate_lunes: q and p must differ");
    std::vector<Lune> out;
    for (int base_dir = 0; base_dir < 2; ++base_dir) {
        for (int bw = 0; bw <= max_wraps; ++bw) {
            for (int curve_dir = 0; curve_dir < 2; ++curve_dir) {
                for (int cw = 0; cw <= max_wraps; ++cw) {
                    BoundaryData bd{q, p, base_dir == 0, bw, curve_dir == 0, cw};
                    auto nu = detail::accept_lune(arr, bd);
                    if (!nu) continue;
                    Lune lune;
                    lune.boundary = bd;
                    lune.nu = std::move(*nu);
                    lune.area = Rational(0);
                    for (std::size_t f = 0; f < arr.faces.size(); ++f)
                        if (lune.nu[f] > 0)
                            lune.area += Rational(lune.nu[f]) * arr.finite_area(static_cast<int>(f));
                    if (lune.area != actions[q] - actions[p])
                        throw InvariantViolation("lune area does not equal the action gap for s" +
                                                 std::to_string(q + 1) + " -> s" + std::to_string(p + 1));
                    out.push_back(std::move(lune));
                }
            }
        }
    }
    return out;
}

// The lune guaranteed between each pair of neighboring points: the region of
// the subtree hanging below edge e_j. If e_j points away from the root it runs
// from s_{j+1} to s_j, otherwise from s_j to s_{j+1}.
struct NeighborLune {
    int label = 0; // segment, 0-based
    int from = 0, to = 0;
    Rational area;
    std::vector<long long> nu;
};

inline std::vector<NeighborLune> neighbor_lunes(const Arrangement& arr, const TreeView& tv,
                                                const ActionTable& actions,
                                                int max_wraps = kDefaultMaxWraps) {
    std::vector<NeighborLune> out;
    for (int j = 0; j < arr.m; ++j) {
        NeighborLune nl;
        nl.label = j;
        int sj = j, sj1 = (j + 1) % arr.m;
        if (tv.sign[j] > 0) {
            nl.from = sj1;
            nl.to = sj;
        } else {
            nl.from = sj;
            nl.to = sj1;
        }
        nl.area = tv.subtree_weight[j];
        nl.nu.assign(arr.faces.size(), 0);
        // Indicator of the faces of T_{v(e_j)}.
        int child = tv.child_face[j];
        for (std::size_t f = 0; f < arr.faces.size(); ++f) {
            int walk = static_cast<int>(f);
            bool inside = false;
            while (walk != -1) {
                if (walk == child) {
                    inside = true;
                    break;
                }
                walk = tv.parent[walk];
            }
            if (inside) nl.nu[f] = 1;
        }
        auto found = enumerate_lunes(arr, actions, nl.from, nl.to, max_wraps);
        bool present = false;
        for (const auto& l : found)
            if (l.nu == nl.nu) present = true;
        if (!present)
            throw InvariantViolation("neighbor lune for segment " + std::to_string(j + 1) +
                                     " not found by enumeration");
        out.push_back(std::move(nl));
    }
    return out;
}

// Z2 Floer complex: generators are the intersection points ordered by
// ascending action (ties by point index); the boundary counts lunes mod 2.
struct FloerComplex {
    int m = 0;
    std::vector<int> order;   // position -> point, ascending (action, index)
    std::vector<int> rank_of; // point -> position
    std::vector<std::vector<int>> count; // raw lune counts [q][p]
    std::vector<std::uint64_t> bnd;      // boundary columns as point masks
    ActionTable actions;

    Rational chain_action(std::uint64_t mask) const {
        // max action over the support; only valid for nonzero chains
        int best = -1;
        for (int p = 0; p < m; ++p)
            if (mask >> p & 1 && (best == -1 || rank_of[p] > rank_of[best])) best = p;
        if (best == -1) throw Error("chain_action: zero chain");
        return actions[best];
    }
    int leading(std::uint64_t mask) const {
        int best = -1;
        for (int p = 0; p < m; ++p)
            if (mask >> p & 1 && (best == -1 || rank_of[p] > rank_of[best])) best = p;
        return best;
    }
};

// Assembles the differential and verifies the complex invariants; violations
// indicate a solver bug or insufficient maxWraps and are never masked.
inline FloerComplex differential(const Arrangement& arr, const TreeView& tv,
                                 const ActionTable& actions, int max_wraps = kDefaultMaxWraps) {
    FloerComplex c;
    c.m = arr.m;
    c.actions = actions;
    c.order.resize(arr.m);
    for (int i = 0; i < arr.m; ++i) c.order[i] = i;
    std::sort(c.order.begin(), c.order.end(), [&](int a, int b) {
        if (actions[a] != actions[b]) return actions[a] < actions[b];
        return a < b;
    });
    c.rank_of.assign(arr.m, 0);
    for (int i = 0; i < arr.m; ++i) c.rank_of[c.order[i]] = i;

    c.count.assign(arr.m, std::vector<int>(arr.m, 0));
    c.bnd.assign(arr.m, 0);
    for (int q = 0; q < arr.m; ++q) {
        for (int p = 0; p < arr.m; ++p) {
            if (q == p) continue;
            auto lunes = enumerate_lunes(arr, actions, q, p, max_wraps);
            int k = static_cast<int>(lunes.size());
            c.count[q][p] = k;
            if (k > 2)
                throw InvariantViolation("more than two lunes from s" + std::to_string(q + 1) +
                                         " to s" + std::to_string(p + 1));
            if (k > 0 && !(actions[q] > actions[p]))
                throw InvariantViolation("differential fails to lower the filtration at s" +
                                         std::to_string(q + 1));
            if (k % 2) c.bnd[q] |= 1ull << p;
        }
    }

    for (int q = 0; q < arr.m; ++q) {
        std::uint64_t dd = 0;
        for (int p = 0; p < arr.m; ++p)
            if (c.bnd[q] >> p & 1) dd ^= c.bnd[p];
        if (dd) throw InvariantViolation("differential does not square to zero");
    }
    int r = gf2::rank(c.bnd);
    if (arr.m - 2 * r != 2)
        throw InvariantViolation("homology rank is " + std::to_string(arr.m - 2 * r) +
                                 ", expected 2");
    neighbor_lunes(arr, tv, actions, max_wraps);
    return c;
}

} // namespace cylfloer
