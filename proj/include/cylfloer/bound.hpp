#pragma once

#include "cylfloer/surgery.hpp"

#include <vector>

namespace cylfloer {

// Sum of 2^j beta_j over the finite bars (descending) plus gamma: the upper
// bound for the Lagrangian Hofer distance carried by the barcode.
inline Rational theorem_bound(const BarStats& stats) {
    Rational sum = stats.gamma;
    for (std::size_t j = 0; j < stats.betas.size(); ++j)
        sum += Rational(std::int64_t(1) << (j + 1)) * stats.betas[j];
    return sum;
}

inline Rational theorem_bound(const Instance& inst, int max_wraps = kDefaultMaxWraps) {
    Model m = build_model(inst);
    FloerComplex c = differential(m.arr, m.tv, m.actions, max_wraps);
    return theorem_bound(bar_stats(barcode(c).first));
}

enum class TargetPolicy {
    SmallestEdgeLabel, // default: the neighbor reached through the smallest edge label
    TowardRoot,        // prefer targets closer to the root, then smallest label
};

inline int pick_target(const Model& model, const Leaf& leaf, TargetPolicy policy) {
    int v = model.arr.face_of(leaf.face);
    int middle = leaf.above ? model.arr.seg_down[leaf.seg] : model.arr.seg_up[leaf.seg];
    auto cands = distance_two(model.arr, model.tv, v);
    // distance_two enumerates via every middle vertex; a leaf has only one.
    (void)middle;
    if (cands.empty()) throw InvalidTarget("leaf has no vertex at tree distance 2");
    if (policy == TargetPolicy::TowardRoot) {
        int best = 0;
        for (int i = 1; i < static_cast<int>(cands.size()); ++i) {
            auto depth = [&](int idx) { return model.tv.depth[cands[idx].first]; };
            if (depth(i) < depth(best) ||
                (depth(i) == depth(best) && cands[i].second < cands[best].second))
                best = i;
        }
        return cands[best].first;
    }
    return cands[0].first; // sorted by edge label
}

// Shortest-bar / leaf correspondence and the lune area gap bound.
struct ShortestBarReport {
    bool skipped = false; // n = 1 or coinciding action values
    std::string skip_reason;
    bool endpoints_are_leaf_corners = false;
    bool leaf_has_min_area = false;
    bool gaps_at_least_beta_min = false;
    bool ok() const {
        return skipped ||
               (endpoints_are_leaf_corners && leaf_has_min_area && gaps_at_least_beta_min);
    }
};

inline ShortestBarReport shortest_bar_leaf_check(const Model& model, const FloerComplex& complex,
                                                 const Barcode& bc) {
    ShortestBarReport rep;
    if (model.inst.n < 2) {
        rep.skipped = true;
        rep.skip_reason = "n = 1: no finite bars";
        return rep;
    }
    if (!model.actions.distinct()) {
        rep.skipped = true;
        rep.skip_reason = "non-generic: coinciding action values";
        return rep;
    }
    BarStats stats = bar_stats(bc);
    const Rational& beta_min = *stats.beta_min;
    auto leaves = find_leaves(model);

    // Every shortest bar must connect the corners of some leaf.
    rep.endpoints_are_leaf_corners = true;
    rep.leaf_has_min_area = true;
    Rational min_leaf_area = leaves.front().area;
    for (const auto& bar : bc.finite) {
        if (bar.length() != beta_min) continue;
        bool found = false;
        for (const auto& leaf : leaves)
            if (model.actions[leaf.pbar] == bar.birth && model.actions[leaf.qbar] == *bar.death) {
                found = true;
                if (leaf.area != min_leaf_area) rep.leaf_has_min_area = false;
            }
        if (!found) rep.endpoints_are_leaf_corners = false;
    }
    if (min_leaf_area != beta_min) rep.leaf_has_min_area = false;

    rep.gaps_at_least_beta_min = true;
    for (int q = 0; q < complex.m; ++q)
        for (int p = 0; p < complex.m; ++p)
            if (q != p && complex.count[q][p] % 2 &&
                model.actions[q] - model.actions[p] < beta_min)
                rep.gaps_at_least_beta_min = false;
    return rep;
}

struct ReductionStep {
    DeletionEvent event;
    Instance after;
};

struct ReductionTrace {
    Instance initial;
    std::vector<ReductionStep> steps;
    Rational gamma_original;
    Rational final_gamma;
    Rational constructive_cost; // sum of step costs plus the terminal gamma
    Rational theorem_bound;
    bool generic = true; // action values distinct at every stage
};

// Reduce to the two-point base case by always deleting a minimum-area leaf
// (ties by smaller qbar). On generic instances each chosen leaf must realize
// the shortest bar; every intermediate instance is revalidated and the
// stability inequalities are checked at each step.
inline ReductionTrace reduce(const Instance& inst, TargetPolicy policy = TargetPolicy::SmallestEdgeLabel,
                             const Rational& eps = Rational(0), int max_wraps = kDefaultMaxWraps) {
    ReductionTrace trace;
    trace.initial = inst;
    trace.constructive_cost = Rational(0);

    Instance current = inst;
    bool first = true;
    while (true) {
        Model model = build_model(current);
        FloerComplex complex = differential(model.arr, model.tv, model.actions, max_wraps);
        auto [bc, jb] = barcode(complex);
        check_rank_oracle(complex, bc);
        BarStats stats = bar_stats(bc);
        if (first) {
            trace.gamma_original = stats.gamma;
            trace.theorem_bound = theorem_bound(stats);
            first = false;
        }
        if (!model.actions.distinct()) trace.generic = false;
        if (model.inst.n == 1) {
            trace.final_gamma = stats.gamma;
            trace.constructive_cost += stats.gamma;
            break;
        }

        auto leaves = find_leaves(model);
        Leaf chosen = leaves.front();
        for (const auto& l : leaves)
            if (l.area < chosen.area || (l.area == chosen.area && l.qbar < chosen.qbar))
                chosen = l;
        if (model.actions.distinct()) {
            ShortestBarReport rep = shortest_bar_leaf_check(model, complex, bc);
            bool corners_match = false;
            for (const auto& bar : bc.finite)
                if (bar.length() == *stats.beta_min &&
                    model.actions[chosen.pbar] == bar.birth &&
                    model.actions[chosen.qbar] == *bar.death)
                    corners_match = true;
            if (!corners_match || chosen.area != *stats.beta_min || !rep.ok())
                throw InvariantViolation(
                    "minimum-area leaf does not realize the shortest finite bar",
                    serialize_instance(current));
        }

        FaceId target = model.arr.faces[pick_target(model, chosen, policy)].id;
        DeletionResult res = delete_leaf(model, chosen, target, eps);
        trace.constructive_cost += res.event.cost;

        // Stability of the step, in the surgery gauge.
        Model post = build_model(res.instance);
        post.actions.value = res.event.new_actions;
        FloerComplex post_complex = differential(post.arr, post.tv, post.actions, max_wraps);
        Barcode post_bc = barcode(post_complex).first;
        StabilityReport st = verify_stability(bc, post_bc, res.event);
        if (!st.ok())
            throw InvariantViolation("stability inequalities fail for a deletion step",
                                     serialize_instance(current));

        trace.steps.push_back({res.event, res.instance});
        current = std::move(res.instance);
    }
    return trace;
}

} // namespace cylfloer
