#pragma once

#include "cylfloer/instance.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace cylfloer {

// Faces, indexed densely. Points are 0-based internally (s_j <-> j-1), and so
// are segment labels (e_j <-> j-1); the JSON/CLI surface stays 1-based.
struct ArrFace {
    FaceId id;
    Weight area;
    int tree = 0; // 0 = top, 1 = bottom
    bool is_root = false;
    bool upper = false;               // which open half-annulus of the base the face lies in
    std::vector<int> segs;            // adjacent segment labels, ascending
};

// Arc of the moving curve, oriented by the traversal order of lcycle. Each
// arc covers a contiguous cyclic block of base segments; the face between the
// arc and the base over that block is `inside`, the face beyond is `outside`.
// In the universal cover the arc spans x in [block_lo + k*m, block_lo +
// block_count + k*m].
struct Arc {
    int a = 0, b = 0; // endpoints (points), a -> b along the curve
    bool upper = false;
    int left = -1, right = -1;   // faces flanking the arc in traversal direction
    int inside = -1, outside = -1;
    int block_lo = 0, block_count = 0;
};

struct BoundaryItem {
    bool is_arc = false;
    int index = 0; // segment label (0-based) or arc index
    friend bool operator==(const BoundaryItem& x, const BoundaryItem& y) {
        return x.is_arc == y.is_arc && x.index == y.index;
    }
};

struct Arrangement {
    int m = 0; // number of intersection points, 2n
    std::vector<ArrFace> faces;
    std::unordered_map<FaceId, int> face_index;
    std::vector<int> seg_up, seg_down; // per segment, face indices
    std::vector<int> seg_tree;         // per segment, owning tree
    std::vector<Arc> arcs;
    std::vector<int> up_arc_at, down_arc_at; // per point, incident arc index
    std::vector<int> lcycle;                 // point order along the curve, starts at point 0
    std::vector<int> lpos;                   // point -> position in lcycle
    std::vector<int> step_arc;               // lcycle[t] -> lcycle[t+1] travels step_arc[t]
    std::vector<int> step_dx;                // x shift of that hop in the universal cover
    int drift = 0;                           // total x shift of one curve period, always +-m
    std::vector<int> ceiling_arc;            // per face: the arc it is inside of, -1 at roots
    std::vector<std::array<int, 4>> quad;    // per point: NE, NW, SW, SE faces
    std::vector<std::vector<BoundaryItem>> face_boundary; // positively oriented cyclic walk
    int top_root = -1, bottom_root = -1;

    int seg_left_point(int j) const { return j; }
    int seg_right_point(int j) const { return (j + 1) % m; }
    int face_of(const FaceId& id) const {
        auto it = face_index.find(id);
        if (it == face_index.end()) throw ValidationError("unknown face id '" + id + "'");
        return it->second;
    }
    const Rational& finite_area(int f) const { return faces[f].area.value(); }
    int tree_degree(int f) const { return static_cast<int>(faces[f].segs.size()); }
};

// Root-relative tree data: parent maps, the sign s(e) of each edge, and the
// finite subtree weight W hanging below each edge.
struct TreeView {
    std::vector<int> parent;      // per face, -1 at roots
    std::vector<int> parent_edge; // per face, segment label to the parent, -1 at roots
    std::vector<int> depth;
    std::vector<int> sign;                  // per segment: +1 away from root, -1 towards it
    std::vector<int> child_face;            // per segment: the endpoint further from the root
    std::vector<Rational> subtree_weight;   // per segment: W(T_{v(e)}), always finite
    std::vector<int> exactness_coefficient; // per face: sum of s(e) along the root path
};

namespace detail {

inline void shape_check(const Instance& inst) {
    if (inst.n < 1 || inst.n > kMaxN)
        throw ValidationError("n must be between 1 and " + std::to_string(kMaxN));
    int m = 2 * inst.n;
    std::set<FaceId> all_ids;
    std::vector<int> label_seen(m, 0);
    int tree_no = 0;
    for (const auto* tree : {&inst.top, &inst.bottom}) {
        const char* name = tree_no == 0 ? "top" : "bottom";
        if (static_cast<int>(tree->edges.size()) != inst.n)
            throw ValidationError(std::string(name) + " tree must have n edges");
        if (static_cast<int>(tree->vertices.size()) != inst.n + 1)
            throw ValidationError(std::string(name) + " tree must have n+1 vertices");
        std::set<FaceId> ids;
        int unbounded = 0;
        for (const auto& v : tree->vertices) {
            if (!ids.insert(v.id).second)
                throw ValidationError("duplicate face id '" + v.id + "'");
            if (!all_ids.insert(v.id).second)
                throw ValidationError("face id '" + v.id + "' appears in both trees");
            if (v.area.is_unbounded()) {
                ++unbounded;
                if (v.id != tree->root)
                    throw ValidationError("unbounded weight on non-root face '" + v.id + "'");
            } else if (v.area.value().sign() <= 0) {
                throw ValidationError("non-positive area on face '" + v.id + "'");
            }
        }
        if (!ids.count(tree->root))
            throw ValidationError(std::string(name) + " root '" + tree->root + "' not among its vertices");
        if (unbounded != 1)
            throw ValidationError(std::string(name) + " tree must have exactly one unbounded face (its root)");
        int parity = -1;
        std::map<FaceId, std::vector<FaceId>> adj;
        for (const auto& e : tree->edges) {
            if (e.label < 1 || e.label > m)
                throw ValidationError("edge label " + std::to_string(e.label) + " out of range 1..2n");
            if (label_seen[e.label - 1]++)
                throw ValidationError("edge label " + std::to_string(e.label) + " used twice");
            if (!ids.count(e.up) || !ids.count(e.down))
                throw ValidationError("edge " + std::to_string(e.label) + " references a face outside its tree");
            if (e.up == e.down)
                throw ValidationError("edge " + std::to_string(e.label) + " is a self-loop");
            int p = e.label % 2;
            if (parity == -1) parity = p;
            if (p != parity)
                throw ValidationError(std::string(name) + " tree mixes odd and even edge labels");
            adj[e.up].push_back(e.down);
            adj[e.down].push_back(e.up);
        }
        // n edges on n+1 vertices: connectivity alone rules out cycles.
        std::vector<FaceId> stack = {tree->root};
        std::set<FaceId> seen = {tree->root};
        while (!stack.empty()) {
            FaceId f = stack.back();
            stack.pop_back();
            for (const auto& g : adj[f])
                if (seen.insert(g).second) stack.push_back(g);
        }
        if (seen.size() != ids.size())
            throw ValidationError(std::string(name) + " tree is not connected");
        ++tree_no;
    }
    for (int l = 0; l < m; ++l)
        if (!label_seen[l]) throw ValidationError("edge label " + std::to_string(l + 1) + " missing");
    // The parity classes are forced to differ: labels are a partition and each
    // tree is monochromatic with n labels apiece.
}

} // namespace detail

// Rebuilds the full curve arrangement from the tree pair. The arc between two
// consecutive segments of a face is forced: it joins the right end of one to
// the left end of the next, on the face's side of the base circle. Both faces
// of an arc must derive it identically or the instance is unrealizable.
inline Arrangement reconstruct_arrangement(const Instance& inst) {
    detail::shape_check(inst);
    Arrangement arr;
    arr.m = 2 * inst.n;

    int tree_no = 0;
    for (const auto* tree : {&inst.top, &inst.bottom}) {
        for (const auto& v : tree->vertices) {
            ArrFace f;
            f.id = v.id;
            f.area = v.area;
            f.tree = tree_no;
            f.is_root = (v.id == tree->root);
            arr.face_index[v.id] = static_cast<int>(arr.faces.size());
            arr.faces.push_back(std::move(f));
        }
        ++tree_no;
    }
    arr.top_root = arr.face_index.at(inst.top.root);
    arr.bottom_root = arr.face_index.at(inst.bottom.root);

    arr.seg_up.assign(arr.m, -1);
    arr.seg_down.assign(arr.m, -1);
    arr.seg_tree.assign(arr.m, -1);
    tree_no = 0;
    for (const auto* tree : {&inst.top, &inst.bottom}) {
        for (const auto& e : tree->edges) {
            int j = e.label - 1;
            arr.seg_up[j] = arr.face_index.at(e.up);
            arr.seg_down[j] = arr.face_index.at(e.down);
            arr.seg_tree[j] = tree_no;
        }
        ++tree_no;
    }

    // Each face lies entirely above or entirely below the base circle.
    std::vector<int> half(arr.faces.size(), -1); // 1 upper, 0 lower
    for (int j = 0; j < arr.m; ++j) {
        for (int side = 0; side < 2; ++side) {
            int f = side == 0 ? arr.seg_up[j] : arr.seg_down[j];
            int h = side == 0 ? 1 : 0;
            if (half[f] == -1)
                half[f] = h;
            else if (half[f] != h)
                throw ReconstructionConflict("face '" + arr.faces[f].id +
                                             "' would lie on both sides of the base circle");
            arr.faces[f].segs.push_back(j);
        }
    }
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        arr.faces[f].upper = half[f] == 1;
        std::sort(arr.faces[f].segs.begin(), arr.faces[f].segs.end());
    }
    if (!arr.faces[arr.top_root].upper)
        throw ReconstructionConflict("top root does not touch the upper half");
    if (arr.faces[arr.bottom_root].upper)
        throw ReconstructionConflict("bottom root does not touch the lower half");

    arr.quad.assign(arr.m, {});
    for (int p = 0; p < arr.m; ++p) {
        int prev = (p + arr.m - 1) % arr.m;
        arr.quad[p] = {arr.seg_up[p], arr.seg_up[prev], arr.seg_down[prev], arr.seg_down[p]};
    }

    // Derive arc claims per face and match them up.
    struct Claim {
        int face;
        int after_seg; // the claim sits between this segment and the next in the face walk
    };
    std::map<std::tuple<int, int, int>, std::vector<Claim>> claims; // (min pt, max pt, side)
    for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f) {
        const auto& segs = arr.faces[f].segs;
        for (std::size_t t = 0; t < segs.size(); ++t) {
            int ja = segs[t];
            int jb = segs[(t + 1) % segs.size()];
            int a = arr.seg_right_point(ja);
            int b = arr.seg_left_point(jb);
            if (a == b)
                throw ReconstructionConflict("face '" + arr.faces[f].id +
                                             "' touches two consecutive segments; no arc fits between them");
            claims[{std::min(a, b), std::max(a, b), half[f]}].push_back({f, ja});
        }
    }
    std::map<std::pair<std::pair<int, int>, int>, int> arc_of; // ((min,max), side) -> arc index
    for (auto& [key, cs] : claims) {
        auto [a, b, side] = key;
        if (cs.size() != 2)
            throw ReconstructionConflict("arc {s" + std::to_string(a + 1) + ", s" + std::to_string(b + 1) +
                                         "} derived " + std::to_string(cs.size()) + " times, expected 2");
        if (arr.faces[cs[0].face].tree == arr.faces[cs[1].face].tree)
            throw ReconstructionConflict("arc {s" + std::to_string(a + 1) + ", s" + std::to_string(b + 1) +
                                         "} separates two faces of the same tree");
        Arc arc;
        arc.a = a;
        arc.b = b;
        arc.upper = side == 1;
        arc_of[{{a, b}, side}] = static_cast<int>(arr.arcs.size());
        arr.arcs.push_back(arc);
    }

    arr.up_arc_at.assign(arr.m, -1);
    arr.down_arc_at.assign(arr.m, -1);
    for (int i = 0; i < static_cast<int>(arr.arcs.size()); ++i) {
        const Arc& arc = arr.arcs[i];
        for (int p : {arc.a, arc.b}) {
            int& slot = arc.upper ? arr.up_arc_at[p] : arr.down_arc_at[p];
            if (slot != -1)
                throw ReconstructionConflict("point s" + std::to_string(p + 1) +
                                             " has two curve germs on the same side");
            slot = i;
        }
    }
    for (int p = 0; p < arr.m; ++p)
        if (arr.up_arc_at[p] == -1 || arr.down_arc_at[p] == -1)
            throw ReconstructionConflict("point s" + std::to_string(p + 1) + " is missing a curve germ");

    // Trace the curve: start at s_1 along its lower germ. Sides alternate.
    arr.lcycle.clear();
    arr.step_arc.clear();
    {
        int p = 0;
        bool side_up = false;
        do {
            arr.lcycle.push_back(p);
            int ai = side_up ? arr.up_arc_at[p] : arr.down_arc_at[p];
            arr.step_arc.push_back(ai);
            const Arc& arc = arr.arcs[ai];
            p = arc.a == p ? arc.b : arc.a;
            side_up = !side_up;
            if (arr.lcycle.size() > static_cast<std::size_t>(arr.m))
                throw ReconstructionConflict("curve trace failed to close");
        } while (p != 0);
        if (static_cast<int>(arr.lcycle.size()) != arr.m)
            throw ReconstructionConflict("curve is disconnected");
    }
    arr.lpos.assign(arr.m, -1);
    for (int t = 0; t < arr.m; ++t) arr.lpos[arr.lcycle[t]] = t;

    // Orient arcs along the traversal and read off their flanking faces from
    // the quadrants at both endpoints; the two readings must agree.
    for (int t = 0; t < arr.m; ++t) {
        int x = arr.lcycle[t];
        int y = arr.lcycle[(t + 1) % arr.m];
        Arc& arc = arr.arcs[arr.step_arc[t]];
        arc.a = x;
        arc.b = y;
        const auto& qx = arr.quad[x];
        const auto& qy = arr.quad[y];
        int left, right, left2, right2;
        if (arc.upper) {
            left = qx[1];  // NW(x)
            right = qx[0]; // NE(x)
            left2 = qy[0]; // NE(y)
            right2 = qy[1];
        } else {
            left = qx[3];  // SE(x)
            right = qx[2]; // SW(x)
            left2 = qy[2]; // SW(y)
            right2 = qy[3];
        }
        if (left != left2 || right != right2)
            throw ReconstructionConflict("arc s" + std::to_string(x + 1) + " -> s" + std::to_string(y + 1) +
                                         " has inconsistent flanking faces");
        arc.left = left;
        arc.right = right;
    }

    // Nesting structure per side: faces of one half and the arcs of that half
    // form a tree rooted at that half's root face (an embedded arc with both
    // endpoints on the base cuts a disc off the half-annulus). The covered
    // block of an arc is the union of the segments of all faces inside it and
    // must be cyclically contiguous, or no embedded curve realizes the trees.
    {
        int nf = static_cast<int>(arr.faces.size());
        std::vector<std::vector<std::pair<int, int>>> side_adj(nf); // face -> (face, arc)
        for (int i = 0; i < static_cast<int>(arr.arcs.size()); ++i) {
            const Arc& arc = arr.arcs[i];
            int f = arc.left, g = arc.right;
            side_adj[f].push_back({g, i});
            side_adj[g].push_back({f, i});
        }
        arr.ceiling_arc.assign(nf, -1);
        std::vector<int> order;
        for (int root : {arr.top_root, arr.bottom_root}) {
            std::vector<int> stack = {root};
            std::vector<bool> seen(nf, false);
            seen[root] = true;
            while (!stack.empty()) {
                int f = stack.back();
                stack.pop_back();
                order.push_back(f);
                for (auto [g, i] : side_adj[f]) {
                    if (seen[g]) continue;
                    seen[g] = true;
                    arr.ceiling_arc[g] = i;
                    arr.arcs[i].inside = g;
                    arr.arcs[i].outside = f;
                    stack.push_back(g);
                }
            }
        }
        std::vector<std::vector<bool>> covered(nf, std::vector<bool>(arr.m, false));
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int f = *it;
            for (int j : arr.faces[f].segs) covered[f][j] = true;
            if (arr.ceiling_arc[f] != -1) {
                int par = arr.arcs[arr.ceiling_arc[f]].outside;
                for (int j = 0; j < arr.m; ++j)
                    if (covered[f][j]) covered[par][j] = true;
            }
        }
        for (auto& arc : arr.arcs) {
            int count = 0, lo = -1;
            const auto& cov = covered[arc.inside];
            for (int j = 0; j < arr.m; ++j) {
                if (cov[j]) ++count;
                if (cov[j] && !cov[(j + arr.m - 1) % arr.m]) lo = j;
            }
            if (lo == -1 || count >= arr.m)
                throw ReconstructionConflict("an arc would have to cover the whole base circle");
            for (int t = 0; t < count; ++t)
                if (!cov[(lo + t) % arr.m])
                    throw ReconstructionConflict("the region inside an arc covers a non-contiguous "
                                                 "block of base segments");
            arc.block_lo = lo;
            arc.block_count = count;
            int lo_pt = lo, hi_pt = (lo + count) % arr.m;
            if (!((arc.a == lo_pt && arc.b == hi_pt) || (arc.a == hi_pt && arc.b == lo_pt)))
                throw ReconstructionConflict("arc endpoints disagree with its covered block");
        }
    }

    // Hops of the curve in the universal cover; one period must shift by
    // exactly one cylinder width or the curve is not an equator.
    arr.step_dx.assign(arr.m, 0);
    for (int t = 0; t < arr.m; ++t) {
        const Arc& arc = arr.arcs[arr.step_arc[t]];
        int from = arr.lcycle[t];
        arr.step_dx[t] = (from == arc.block_lo) ? arc.block_count : -arc.block_count;
        arr.drift += arr.step_dx[t];
    }
    if (arr.drift != arr.m && arr.drift != -arr.m)
        throw ReconstructionConflict("curve winds " + std::to_string(arr.drift) + "/" +
                                     std::to_string(arr.m) + " times around the cylinder");

    // Face boundaries as positively oriented cyclic walks (interior on the left):
    // upper faces visit their segments in ascending cyclic label order, lower
    // faces in descending order, with the forced arc between consecutive ones.
    arr.face_boundary.assign(arr.faces.size(), {});
    for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f) {
        const auto& segs = arr.faces[f].segs;
        int deg = static_cast<int>(segs.size());
        auto arc_after = [&](int t) {
            int ja = segs[t];
            int jb = segs[(t + 1) % deg];
            int a = arr.seg_right_point(ja);
            int b = arr.seg_left_point(jb);
            return arc_of.at({{std::min(a, b), std::max(a, b)}, half[f]});
        };
        auto& walk = arr.face_boundary[f];
        if (arr.faces[f].upper) {
            for (int t = 0; t < deg; ++t) {
                walk.push_back({false, segs[t]});
                walk.push_back({true, arc_after(t)});
            }
        } else {
            for (int t = deg - 1; t >= 0; --t) {
                walk.push_back({false, segs[t]});
                walk.push_back({true, arc_after((t + deg - 1) % deg)});
            }
        }
    }

    return arr;
}

// Sign rule: s(e) = +1 when the up -> down orientation points away from the
// root, -1 when it points towards it.
inline TreeView derive_trees(const Arrangement& arr) {
    TreeView tv;
    int nf = static_cast<int>(arr.faces.size());
    tv.parent.assign(nf, -1);
    tv.parent_edge.assign(nf, -1);
    tv.depth.assign(nf, 0);
    tv.exactness_coefficient.assign(nf, 0);
    tv.sign.assign(arr.m, 0);
    tv.child_face.assign(arr.m, -1);
    tv.subtree_weight.assign(arr.m, Rational(0));

    std::vector<std::vector<std::pair<int, int>>> adj(nf); // face -> (neighbor, segment)
    for (int j = 0; j < arr.m; ++j) {
        adj[arr.seg_up[j]].push_back({arr.seg_down[j], j});
        adj[arr.seg_down[j]].push_back({arr.seg_up[j], j});
    }

    std::vector<int> order;
    for (int root : {arr.top_root, arr.bottom_root}) {
        std::vector<int> stack = {root};
        std::vector<bool> seen(nf, false);
        seen[root] = true;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            order.push_back(f);
            for (auto [g, j] : adj[f]) {
                if (seen[g] || arr.faces[g].tree != arr.faces[f].tree) continue;
                seen[g] = true;
                tv.parent[g] = f;
                tv.parent_edge[g] = j;
                tv.depth[g] = tv.depth[f] + 1;
                tv.sign[j] = (arr.seg_down[j] == g) ? 1 : -1;
                tv.child_face[j] = g;
                tv.exactness_coefficient[g] = tv.exactness_coefficient[f] + tv.sign[j];
                stack.push_back(g);
            }
        }
    }

    // Subtree weights by reverse BFS order; subtrees never contain a root.
    std::vector<Rational> acc(nf, Rational(0));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int f = *it;
        if (arr.faces[f].is_root) continue;
        acc[f] += arr.faces[f].area.value();
        int j = tv.parent_edge[f];
        tv.subtree_weight[j] = acc[f];
        int par = tv.parent[f];
        if (!arr.faces[par].is_root) acc[par] += acc[f];
    }
    return tv;
}

// Vertices at tree distance 2 from `f`, i.e. the other neighbors of its
// neighbors, paired with the connecting segment label at the middle vertex.
inline std::vector<std::pair<int, int>> distance_two(const Arrangement& arr, const TreeView& tv,
                                                     int face) {
    std::vector<std::vector<std::pair<int, int>>> adj(arr.faces.size());
    for (int j = 0; j < arr.m; ++j) {
        adj[arr.seg_up[j]].push_back({arr.seg_down[j], j});
        adj[arr.seg_down[j]].push_back({arr.seg_up[j], j});
    }
    std::vector<std::pair<int, int>> out; // (face w, segment k to the middle vertex)
    for (auto [mid, j1] : adj[face])
        for (auto [w, k] : adj[mid])
            if (w != face) out.push_back({w, k});
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    (void)tv;
    return out;
}

// --- validation -----------------------------------------------------------------

struct RuleResult {
    std::string rule;
    bool passed = false;
    std::string message;
};

struct ValidationReport {
    std::vector<RuleResult> rules;
    std::vector<std::string> warnings;
    bool valid() const {
        for (const auto& r : rules)
            if (!r.passed) return false;
        return true;
    }
};

} // namespace cylfloer
