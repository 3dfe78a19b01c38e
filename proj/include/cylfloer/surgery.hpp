#pragma once

#include "cylfloer/persistence.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cylfloer {

// Degree-1 non-root face: a minimal lune bounded by one segment and one arc.
// Case 1 sits above the base circle (qbar = s_j), Case 2 below (pbar = s_j).
struct Leaf {
    FaceId face;
    int seg = 0;            // 0-based segment label
    int qbar = 0, pbar = 0; // 0-based corner points, A(qbar) > A(pbar)
    Rational area;
    bool above = false;
};

inline std::vector<Leaf> find_leaves(const Model& model) {
    std::vector<Leaf> out;
    const Arrangement& arr = model.arr;
    for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f) {
        if (arr.faces[f].is_root || arr.tree_degree(f) != 1) continue;
        Leaf leaf;
        leaf.face = arr.faces[f].id;
        leaf.seg = arr.faces[f].segs[0];
        leaf.area = arr.finite_area(f);
        leaf.above = arr.faces[f].upper;
        int sj = leaf.seg, sj1 = (leaf.seg + 1) % arr.m;
        if (leaf.above) {
            leaf.qbar = sj;
            leaf.pbar = sj1;
        } else {
            leaf.pbar = sj;
            leaf.qbar = sj1;
        }
        out.push_back(std::move(leaf));
    }
    std::sort(out.begin(), out.end(), [](const Leaf& a, const Leaf& b) {
        if (a.area != b.area) return a.area < b.area;
        return a.seg < b.seg;
    });
    return out;
}

inline Leaf leaf_by_face(const Model& model, const FaceId& id) {
    for (const auto& l : find_leaves(model))
        if (l.face == id) return l;
    throw InvalidTarget("face '" + id + "' is not a leaf");
}

struct DeletionEvent {
    Leaf leaf;
    FaceId target;
    int k = 0; // 0-based label of the edge joining the target to the middle vertex
    Rational epsilon;
    Rational cost; // a(v) + epsilon
    std::vector<int> relabel; // old point -> new point, -1 for the two deleted ones
    FaceId merged_id, other_piece_id, over_id, middle_id;
    std::vector<Rational> new_actions; // per new point, in the surgery gauge
};

struct DeletionResult {
    Instance instance;
    DeletionEvent event;
};

namespace detail {

inline bool in_cyclic_window(int t, int from, int to, int m) {
    return ((t - from) % m + m) % m <= ((to - from) % m + m) % m;
}

inline RootedTree* tree_of_face(Instance& inst, const FaceId& id) {
    for (auto* t : {&inst.top, &inst.bottom})
        for (const auto& v : t->vertices)
            if (v.id == id) return t;
    throw ValidationError("unknown face id '" + id + "'");
}

inline FaceArea* find_vertex(RootedTree& t, const FaceId& id) {
    for (auto& v : t.vertices)
        if (v.id == id) return &v;
    return nullptr;
}

inline void add_weight(FaceArea& v, const Rational& delta) {
    if (v.area.is_unbounded()) return;
    Rational next = v.area.value() + delta;
    if (next.sign() <= 0)
        throw NonPositiveWeight("weight of face '" + v.id + "' would become " + next.str());
    v.area = Weight::of(next);
}

inline std::string fresh_face_id(const Instance& inst, int& counter) {
    auto used = [&](const FaceId& id) {
        for (const auto* t : {&inst.top, &inst.bottom})
            for (const auto& v : t->vertices)
                if (v.id == id) return true;
        return false;
    };
    std::string id;
    do {
        id = "f" + std::to_string(counter++);
    } while (used(id));
    return id;
}

} // namespace detail

// Khanevsky's leaf deletion as exact tree surgery: the two corner points
// disappear, the leaf's weight moves to a vertex at distance two, and in the
// opposite tree the two faces flanking the corridor merge while the edges
// j-1 and j+1 fuse into one. The returned action table follows the shift
// formula (+-(a(v)+eps)/2 on the index window between j+2 and k) and is kept
// in that gauge; it is checked against a fresh derivation from the new trees.
inline DeletionResult delete_leaf(const Model& model, const Leaf& leaf, const FaceId& target,
                                  const Rational& eps = Rational(0)) {
    const Arrangement& arr = model.arr;
    int m = arr.m;
    if (model.inst.n < 2) throw BaseCase("cannot delete a leaf of a two-point instance");
    if (eps.sign() < 0) throw ValidationError("epsilon must be nonnegative");

    int v = arr.face_of(leaf.face);
    if (arr.faces[v].is_root || arr.tree_degree(v) != 1)
        throw InvalidTarget("face '" + leaf.face + "' is not a leaf");
    int J = leaf.seg;
    bool case1 = leaf.above;
    int middle = case1 ? arr.seg_down[J] : arr.seg_up[J];

    int w = arr.face_of(target);
    int K = -1;
    for (int j = 0; j < m; ++j) {
        if (j == J) continue;
        if ((arr.seg_up[j] == middle && arr.seg_down[j] == w) ||
            (arr.seg_down[j] == middle && arr.seg_up[j] == w))
            K = j;
    }
    if (K == -1)
        throw InvalidTarget("target '" + target + "' is not at tree distance 2 from the leaf");

    int Jm1 = (J + m - 1) % m, Jp1 = (J + 1) % m;
    int b = case1 ? arr.seg_up[Jm1] : arr.seg_down[Jm1];
    int b_check = case1 ? arr.seg_up[Jp1] : arr.seg_down[Jp1];
    if (b != b_check)
        throw InvariantViolation("faces over the leaf disagree between edges j-1 and j+1",
                                 serialize_instance(model.inst));
    int b1 = case1 ? arr.seg_down[Jm1] : arr.seg_up[Jm1];
    int b2 = case1 ? arr.seg_down[Jp1] : arr.seg_up[Jp1];
    if (b1 == b2)
        throw InvariantViolation("corridor faces coincide", serialize_instance(model.inst));

    // Point and label renumbering. Deleted points: J and J+1.
    std::vector<int> relabel(m, -1);
    {
        int next = 0;
        for (int t = 0; t < m; ++t)
            if (t != J && t != Jp1) relabel[t] = next++;
    }

    Instance out = model.inst;
    RootedTree& leaf_tree = *detail::tree_of_face(out, leaf.face);
    RootedTree& other_tree = *detail::tree_of_face(out, arr.faces[b].id);

    // Leaf tree: drop v and its edge, move a(v)+eps to the target, take eps
    // from the middle vertex.
    leaf_tree.vertices.erase(std::remove_if(leaf_tree.vertices.begin(), leaf_tree.vertices.end(),
                                            [&](const FaceArea& f) { return f.id == leaf.face; }),
                             leaf_tree.vertices.end());
    leaf_tree.edges.erase(std::remove_if(leaf_tree.edges.begin(), leaf_tree.edges.end(),
                                         [&](const TreeEdge& e) { return e.label - 1 == J; }),
                          leaf_tree.edges.end());
    detail::add_weight(*detail::find_vertex(leaf_tree, target), leaf.area + eps);
    detail::add_weight(*detail::find_vertex(leaf_tree, arr.faces[middle].id), -eps);

    // Opposite tree: merge the corridor faces, fuse edges j-1 and j+1.
    const FaceId b1_id = arr.faces[b1].id, b2_id = arr.faces[b2].id, b_id = arr.faces[b].id;
    Weight merged_weight;
    if (arr.faces[b1].area.is_unbounded() || arr.faces[b2].area.is_unbounded())
        merged_weight = Weight::unbounded();
    else
        merged_weight = Weight::of(arr.faces[b1].area.value() + arr.faces[b2].area.value() + eps);
    other_tree.vertices.erase(std::remove_if(other_tree.vertices.begin(), other_tree.vertices.end(),
                                             [&](const FaceArea& f) { return f.id == b2_id; }),
                              other_tree.vertices.end());
    detail::find_vertex(other_tree, b1_id)->area = merged_weight;
    if (merged_weight.is_unbounded()) other_tree.root = b1_id;
    other_tree.edges.erase(std::remove_if(other_tree.edges.begin(), other_tree.edges.end(),
                                          [&](const TreeEdge& e) { return e.label - 1 == Jp1; }),
                           other_tree.edges.end());
    for (auto& e : other_tree.edges) {
        if (e.label - 1 == Jm1) {
            if (case1) {
                e.up = b_id;
                e.down = b1_id;
            } else {
                e.up = b1_id;
                e.down = b_id;
            }
        } else {
            if (e.up == b2_id) e.up = b1_id;
            if (e.down == b2_id) e.down = b1_id;
        }
    }
    detail::add_weight(*detail::find_vertex(other_tree, b_id), -eps);

    // Relabel all segments by their (surviving) left endpoint.
    for (auto* tree : {&out.top, &out.bottom})
        for (auto& e : tree->edges) e.label = relabel[e.label - 1] + 1;
    out.n = model.inst.n - 1;

    // Action shift per the window between j+2 and k.
    Rational h = half(leaf.area + eps);
    std::vector<Rational> new_actions(m - 2);
    for (int t = 0; t < m; ++t) {
        if (relabel[t] == -1) continue;
        bool inside = detail::in_cyclic_window(t, (J + 2) % m, K, m);
        Rational shift = (case1 == inside) ? h : -h;
        new_actions[relabel[t]] = model.actions[t] + shift;
    }

    require_valid(out);
    {
        ActionTable fresh = action_table(out);
        for (int t = 0; t < m - 2; ++t) {
            int t1 = (t + 1) % (m - 2);
            if (new_actions[t1] - new_actions[t] != fresh.value[t1] - fresh.value[t])
                throw InvariantViolation("surgery action shift disagrees with the new trees",
                                         serialize_instance(model.inst));
        }
    }

    DeletionResult res;
    res.instance = std::move(out);
    res.event = {leaf,    target, K,    eps,  leaf.area + eps, relabel,
                 b1_id,   b2_id,  b_id, arr.faces[middle].id, std::move(new_actions)};
    return res;
}

// --- insertion -------------------------------------------------------------------

// Parameters of a leaf insertion, the inverse of a deletion read right to
// left. `seg` is subdivided into three; the face on the leaf's far side of it
// splits along the finger pushed from `arc`; w1 goes to the piece adjacent to
// the left third, w2 to the other. The source pays area + eps.
struct InsertionSpec {
    int seg = 0;                  // 0-based segment label to subdivide
    std::pair<int, int> arc;      // endpoints (0-based points) of the arc on the split face
    bool leaf_above = false;      // Case 1 when true
    Weight w1, w2;                // split weights; exactly one unbounded iff the split face is a root
    Rational area;                // new leaf area
    FaceId source;                // face adjacent to the arc's far side, pays area + eps
    Rational epsilon;
    std::optional<FaceId> leaf_id, piece_id; // ids for the new faces; fresh when absent
};

inline Instance insert_leaf(const Model& model, const InsertionSpec& spec) {
    const Arrangement& arr = model.arr;
    int m = arr.m;
    if (spec.seg < 0 || spec.seg >= m) throw ValidationError("segment label out of range");
    if (spec.area.sign() <= 0) throw NonPositiveWeight("leaf area must be positive");
    if (spec.epsilon.sign() < 0) throw ValidationError("epsilon must be nonnegative");

    int L = spec.seg;
    int M = spec.leaf_above ? arr.seg_down[L] : arr.seg_up[L]; // face being split
    int B = spec.leaf_above ? arr.seg_up[L] : arr.seg_down[L];

    // Locate the arc on the boundary walk of M.
    const auto& walk = arr.face_boundary[M];
    int pos_seg = -1, pos_arc = -1;
    for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
        if (!walk[i].is_arc && walk[i].index == L) pos_seg = i;
        if (walk[i].is_arc) {
            const Arc& a = arr.arcs[walk[i].index];
            if ((a.a == spec.arc.first && a.b == spec.arc.second) ||
                (a.a == spec.arc.second && a.b == spec.arc.first))
                pos_arc = i;
        }
    }
    if (pos_seg == -1) throw Error("internal: segment not on its face boundary");
    if (pos_arc == -1)
        throw InvalidTarget("arc {s" + std::to_string(spec.arc.first + 1) + ", s" +
                            std::to_string(spec.arc.second + 1) +
                            "} is not on the boundary of the split face");
    const Arc& alpha = arr.arcs[walk[pos_arc].index];
    int F = alpha.left == M ? alpha.right : alpha.left; // far side of the arc

    int u = arr.face_of(spec.source);
    bool adjacent = false;
    for (int j = 0; j < m; ++j)
        if ((arr.seg_up[j] == F && arr.seg_down[j] == u) ||
            (arr.seg_down[j] == F && arr.seg_up[j] == u))
            adjacent = true;
    if (!adjacent || u == M)
        throw InvalidTarget("source '" + spec.source + "' is not adjacent to the arc's far face");
    if (!arr.faces[u].area.is_unbounded() &&
        !(arr.faces[u].area.value() > spec.area + spec.epsilon))
        throw NonPositiveWeight("source face '" + spec.source + "' cannot pay area + epsilon");

    // Split weights.
    if (arr.faces[M].area.is_unbounded()) {
        if (spec.w1.is_unbounded() == spec.w2.is_unbounded())
            throw ValidationError("splitting a root face needs exactly one unbounded part");
        const Weight& fin = spec.w1.is_unbounded() ? spec.w2 : spec.w1;
        if (fin.value().sign() <= 0) throw NonPositiveWeight("split weight must be positive");
    } else {
        if (spec.w1.is_unbounded() || spec.w2.is_unbounded())
            throw ValidationError("unbounded split weight on a non-root face");
        if (spec.w1.value().sign() <= 0 || spec.w2.value().sign() <= 0)
            throw NonPositiveWeight("split weights must be positive");
        if (spec.w1.value() + spec.w2.value() != arr.faces[M].area.value() - spec.epsilon)
            throw ValidationError("split weights must sum to the split face's weight minus epsilon");
    }

    // Boundary intervals between the segment and the arc, in walk order.
    int len = static_cast<int>(walk.size());
    std::vector<BoundaryItem> after_seg, after_arc;
    for (int i = (pos_seg + 1) % len; i != pos_arc; i = (i + 1) % len) after_seg.push_back(walk[i]);
    for (int i = (pos_arc + 1) % len; i != pos_seg; i = (i + 1) % len) after_arc.push_back(walk[i]);
    // The piece adjacent to the left third of the subdivided segment follows
    // the segment in the walk for a lower split face, the arc for an upper one.
    const auto& left_items = arr.faces[M].upper ? after_arc : after_seg;
    const auto& right_items = arr.faces[M].upper ? after_seg : after_arc;

    Instance out = model.inst;
    int fresh_counter = 0;
    FaceId left_id = arr.faces[M].id;
    FaceId right_id = spec.piece_id ? *spec.piece_id : detail::fresh_face_id(out, fresh_counter);
    FaceId leaf_id = spec.leaf_id ? *spec.leaf_id : detail::fresh_face_id(out, fresh_counter);
    if (right_id == leaf_id || detail::find_vertex(out.top, right_id) ||
        detail::find_vertex(out.bottom, right_id) || detail::find_vertex(out.top, leaf_id) ||
        detail::find_vertex(out.bottom, leaf_id))
        throw ValidationError("new face ids collide with existing ones");

    RootedTree& seg_tree = *detail::tree_of_face(out, arr.faces[M].id);
    RootedTree& far_tree = *detail::tree_of_face(out, arr.faces[F].id);

    // Relabel: two new points after the left endpoint of `seg`.
    auto relabel = [&](int label0) { return label0 <= L ? label0 : label0 + 2; };
    for (auto* tree : {&out.top, &out.bottom})
        for (auto& e : tree->edges) e.label = relabel(e.label - 1) + 1;

    // Split face: left piece keeps the id and gets w1.
    detail::find_vertex(seg_tree, left_id)->area = spec.w1;
    seg_tree.vertices.push_back({right_id, spec.w2});
    if (arr.faces[M].area.is_unbounded())
        seg_tree.root = spec.w1.is_unbounded() ? left_id : right_id;
    std::set<int> right_segs;
    for (const auto& it : right_items)
        if (!it.is_arc) right_segs.insert(relabel(it.index) + 1);
    for (auto& e : seg_tree.edges) {
        if (!right_segs.count(e.label)) continue;
        if (e.up == left_id) e.up = right_id;
        if (e.down == left_id) e.down = right_id;
    }
    (void)left_items;

    // Replace the subdivided segment by its outer thirds and add the middle
    // edge carrying the new leaf.
    const FaceId b_id = arr.faces[B].id;
    seg_tree.edges.erase(std::remove_if(seg_tree.edges.begin(), seg_tree.edges.end(),
                                        [&](const TreeEdge& e) { return e.label - 1 == L; }),
                         seg_tree.edges.end());
    if (spec.leaf_above) {
        seg_tree.edges.push_back({L + 1, b_id, left_id});
        seg_tree.edges.push_back({L + 3, b_id, right_id});
    } else {
        seg_tree.edges.push_back({L + 1, left_id, b_id});
        seg_tree.edges.push_back({L + 3, right_id, b_id});
    }
    far_tree.vertices.push_back({leaf_id, Weight::of(spec.area)});
    const FaceId f_id = arr.faces[F].id;
    if (spec.leaf_above)
        far_tree.edges.push_back({L + 2, leaf_id, f_id});
    else
        far_tree.edges.push_back({L + 2, f_id, leaf_id});

    detail::add_weight(*detail::find_vertex(*detail::tree_of_face(out, b_id), b_id),
                       spec.epsilon);
    detail::add_weight(*detail::find_vertex(far_tree, f_id), spec.epsilon);
    detail::add_weight(*detail::find_vertex(*detail::tree_of_face(out, spec.source), spec.source),
                       -(spec.area + spec.epsilon));

    out.n = model.inst.n + 1;
    require_valid(out);
    return out;
}

// Insertion parameters that undo a deletion: applying them to the deletion's
// output reproduces the original instance up to a cyclic relabeling (exactly,
// when the deleted segment block does not wrap past s_1).
inline InsertionSpec derive_insertion(const Model& pre, const DeletionEvent& ev) {
    const Arrangement& arr = pre.arr;
    int m = arr.m;
    int J = ev.leaf.seg, Jp1 = (J + 1) % m;
    bool case1 = ev.leaf.above;
    InsertionSpec spec;
    spec.seg = ev.relabel[(J + m - 1) % m];
    int arc_j = case1 ? arr.down_arc_at[J] : arr.up_arc_at[J];
    int arc_j1 = case1 ? arr.down_arc_at[Jp1] : arr.up_arc_at[Jp1];
    auto far_end = [&](int arc_idx, int at) {
        const Arc& a = arr.arcs[arc_idx];
        return a.a == at ? a.b : a.a;
    };
    spec.arc = {ev.relabel[far_end(arc_j, J)], ev.relabel[far_end(arc_j1, Jp1)]};
    spec.leaf_above = case1;
    int b1 = arr.face_of(ev.merged_id), b2 = arr.face_of(ev.other_piece_id);
    spec.w1 = arr.faces[b1].area;
    spec.w2 = arr.faces[b2].area;
    spec.area = ev.leaf.area;
    spec.source = ev.target;
    spec.epsilon = ev.epsilon;
    spec.leaf_id = ev.leaf.face;
    spec.piece_id = ev.other_piece_id;
    return spec;
}

// --- chain maps -----------------------------------------------------------------

// The three maps of a deletion step, as columns over point masks. Psi and Phi
// are chain homotopy inverses; T is the homotopy on the big complex.
struct ChainMaps {
    std::vector<std::uint64_t> psi; // pre generator -> chain of post generators
    std::vector<std::uint64_t> phi; // post generator -> chain of pre generators
    std::vector<std::uint64_t> t;   // pre generator -> chain of pre generators
};

// Builds Psi, Phi, T from the pre-deletion lune counts and verifies: both
// chain-map identities, Psi Phi = Id, Phi Psi - Id = dT + Td, the update rule
// n'(q,p) = n(q,p) + n(q,pbar) n(qbar,p) against freshly enumerated lunes,
// and the action shift bounds (a+eps)/2 for Psi/Phi and a+eps for T.
inline ChainMaps chain_maps(const Model& pre, const FloerComplex& pre_complex,
                            const Model& post, const FloerComplex& post_complex,
                            const DeletionEvent& ev) {
    int m = pre.arr.m;
    int qbar = ev.leaf.qbar, pbar = ev.leaf.pbar;
    const std::vector<int>& rl = ev.relabel;
    std::vector<int> old_of(m - 2, -1);
    for (int t = 0; t < m; ++t)
        if (rl[t] != -1) old_of[rl[t]] = t;

    ChainMaps maps;
    maps.psi.assign(m, 0);
    maps.phi.assign(m - 2, 0);
    maps.t.assign(m, 0);
    for (int q = 0; q < m; ++q) {
        if (q == qbar) continue;
        if (q == pbar) {
            for (int p = 0; p < m; ++p)
                if (rl[p] != -1 && pre_complex.count[qbar][p] % 2) maps.psi[q] |= 1ull << rl[p];
        } else {
            maps.psi[q] = 1ull << rl[q];
        }
    }
    for (int q = 0; q < m - 2; ++q) {
        maps.phi[q] = 1ull << old_of[q];
        if (pre_complex.count[old_of[q]][pbar] % 2) maps.phi[q] |= 1ull << qbar;
    }
    maps.t[pbar] = 1ull << qbar;

    auto apply = [](const std::vector<std::uint64_t>& cols, std::uint64_t mask) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (mask >> i & 1) v ^= cols[i];
        return v;
    };
    const auto& d = pre_complex.bnd;
    const auto& d2 = post_complex.bnd;
    auto fail = [&](const std::string& what) {
        throw InvariantViolation(what, serialize_instance(pre.inst));
    };

    for (int q = 0; q < m; ++q) {
        if (apply(maps.psi, d[q]) != apply(d2, maps.psi[q])) fail("Psi is not a chain map");
        std::uint64_t lhs = apply(maps.phi, maps.psi[q]) ^ (1ull << q);
        std::uint64_t rhs = apply(d, maps.t[q]) ^ apply(maps.t, d[q]);
        if (lhs != rhs) fail("Phi Psi - Id != dT + Td");
    }
    for (int q = 0; q < m - 2; ++q) {
        if (apply(maps.phi, d2[q]) != apply(d, maps.phi[q])) fail("Phi is not a chain map");
        if (apply(maps.psi, maps.phi[q]) != (1ull << q)) fail("Psi Phi != Id");
    }
    for (int q = 0; q < m - 2; ++q)
        for (int p = 0; p < m - 2; ++p) {
            if (q == p) continue;
            int expect = (pre_complex.count[old_of[q]][old_of[p]] +
                          pre_complex.count[old_of[q]][pbar] * pre_complex.count[qbar][old_of[p]]) %
                         2;
            if (post_complex.count[q][p] % 2 != expect)
                fail("differential update formula disagrees with fresh enumeration");
        }

    Rational hshift = half(ev.cost);
    for (int q = 0; q < m; ++q)
        if (maps.psi[q] && post_complex.chain_action(maps.psi[q]) > pre.actions[q] + hshift)
            fail("Psi shifts action by more than (a+eps)/2");
    for (int q = 0; q < m - 2; ++q)
        if (maps.phi[q] && pre_complex.chain_action(maps.phi[q]) > post.actions.value[q] + hshift)
            fail("Phi shifts action by more than (a+eps)/2");
    if (pre.actions[qbar] > pre.actions[pbar] + ev.cost)
        fail("T shifts action by more than a+eps");
    return maps;
}

// --- stability -------------------------------------------------------------------

struct StabilityReport {
    bool beta_ok = false;
    bool gamma_ok = false;
    bool matching_ok = false;
    Rational bound; // a(v) + eps
    bool ok() const { return beta_ok && gamma_ok && matching_ok; }
};

// The barcode comparisons of a deletion step, all exact: |beta_j - beta'_j|
// and |gamma - gamma'| at most a(v)+eps, and a (a(v)+eps)/2 matching between
// the barcodes taken in the surgery gauge.
inline StabilityReport verify_stability(const Barcode& pre_bc, const Barcode& post_bc,
                                        const DeletionEvent& ev) {
    StabilityReport rep;
    rep.bound = ev.cost;
    BarStats s1 = bar_stats(pre_bc), s2 = bar_stats(post_bc);
    rep.beta_ok = true;
    for (std::size_t i = 0; i < s2.betas.size(); ++i) {
        if (i >= s1.betas.size() || (s1.betas[i] - s2.betas[i]).abs() > rep.bound)
            rep.beta_ok = false;
    }
    if (s1.betas.size() != s2.betas.size() + 1) rep.beta_ok = false;
    rep.gamma_ok = (s1.gamma - s2.gamma).abs() <= rep.bound;
    rep.matching_ok = delta_matching_exists(pre_bc, post_bc, half(rep.bound)).exists;
    return rep;
}

} // namespace cylfloer
