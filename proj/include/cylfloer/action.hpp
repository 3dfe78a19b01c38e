#pragma once

#include "cylfloer/arrangement.hpp"

#include <optional>
#include <set>
#include <vector>

namespace cylfloer {

// Action values per intersection point, anchored at A(s_1) = 0. Only
// differences are meaningful; every consumer is gauge invariant except the
// delta-matching of a surgery step, which uses the surgery's own gauge.
struct ActionTable {
    std::vector<Rational> value; // per point, 0-based

    const Rational& operator[](int p) const { return value[p]; }
    int points() const { return static_cast<int>(value.size()); }

    bool distinct() const {
        std::set<Rational> seen;
        for (const auto& v : value)
            if (!seen.insert(v).second) return false;
        return true;
    }
};

// Cyclic sum of the action differences s(e_j) W(T_{v(e_j)}); zero exactly when
// an action table exists.
inline Rational exactness_defect(const Arrangement& arr, const TreeView& tv) {
    Rational sum(0);
    for (int j = 0; j < arr.m; ++j)
        sum += Rational(tv.sign[j]) * tv.subtree_weight[j];
    return sum;
}

inline Rational exactness_defect(const Instance& inst) {
    Arrangement arr = reconstruct_arrangement(inst);
    TreeView tv = derive_trees(arr);
    return exactness_defect(arr, tv);
}

inline ActionTable action_table(const Arrangement& arr, const TreeView& tv) {
    if (!exactness_defect(arr, tv).is_zero())
        throw NonExact("exactness defect is nonzero; no action table exists");
    ActionTable t;
    t.value.assign(arr.m, Rational(0));
    for (int j = 0; j + 1 < arr.m; ++j)
        t.value[j + 1] = t.value[j] + Rational(tv.sign[j]) * tv.subtree_weight[j];
    return t;
}

inline ActionTable action_table(const Instance& inst) {
    Arrangement arr = reconstruct_arrangement(inst);
    TreeView tv = derive_trees(arr);
    return action_table(arr, tv);
}

// Validated instance together with everything derived from it.
struct Model {
    Instance inst;
    Arrangement arr;
    TreeView tv;
    ActionTable actions;
};

inline Model build_model(Instance inst) {
    Model m;
    m.arr = reconstruct_arrangement(inst);
    m.tv = derive_trees(m.arr);
    m.actions = action_table(m.arr, m.tv);
    m.inst = std::move(inst);
    return m;
}

// Aggregates the structural rules. Violations are reported, never repaired;
// coinciding action values are only a warning (all operations except the
// shortest-bar checks tolerate ties with deterministic tie-breaking).
inline ValidationReport validate(const Instance& inst) {
    ValidationReport rep;
    auto rule = [&](const std::string& name, bool ok, const std::string& msg) {
        rep.rules.push_back({name, ok, ok ? "" : msg});
        return ok;
    };

    std::optional<Arrangement> arr;
    try {
        detail::shape_check(inst);
        rep.rules.push_back({"tree_shape", true, ""});
        rep.rules.push_back({"parity_split", true, ""});
        rep.rules.push_back({"root_placement", true, ""});
        rep.rules.push_back({"positive_weights", true, ""});
    } catch (const ValidationError& e) {
        rule("tree_shape", false, e.what());
        return rep;
    }
    try {
        arr = reconstruct_arrangement(inst);
        rep.rules.push_back({"arrangement_reconstruction", true, ""});
    } catch (const ValidationError& e) {
        rule("arrangement_reconstruction", false, e.what());
        return rep;
    }
    TreeView tv = derive_trees(*arr);
    Rational defect = exactness_defect(*arr, tv);
    rule("zero_exactness_defect", defect.is_zero(),
         "exactness defect is " + defect.str() + ", instance is not exact");
    if (defect.is_zero()) {
        ActionTable at = action_table(*arr, tv);
        if (!at.distinct())
            rep.warnings.push_back("action spectrum has coinciding values; "
                                   "shortest-bar checks will be skipped");
    }
    return rep;
}

inline void require_valid(const Instance& inst) {
    ValidationReport rep = validate(inst);
    for (const auto& r : rep.rules)
        if (!r.passed) throw ValidationError(r.rule + ": " + r.message);
}

} // namespace cylfloer
