#pragma once

#include "cylfloer/bound.hpp"
#include "cylfloer/generator.hpp"

#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace cylfloer {

// Aggregated pass/fail bookkeeping for the invariant suite.
struct SuiteResult {
    std::map<std::string, int> pass;
    std::map<std::string, int> fail;
    std::vector<std::string> messages;             // one per failure
    std::vector<std::string> offending_instances;  // serialized, aligned with messages

    bool ok() const { return fail.empty(); }
    void record(const std::string& name, bool good, const std::string& msg,
                const std::string& instance_json) {
        if (good) {
            ++pass[name];
        } else {
            ++fail[name];
            messages.push_back(name + ": " + msg);
            offending_instances.push_back(instance_json);
        }
    }
    void merge(const SuiteResult& other) {
        for (const auto& [k, v] : other.pass) pass[k] += v;
        for (const auto& [k, v] : other.fail) fail[k] += v;
        messages.insert(messages.end(), other.messages.begin(), other.messages.end());
        offending_instances.insert(offending_instances.end(), other.offending_instances.begin(),
                                   other.offending_instances.end());
    }
};

namespace detail {

inline bool lune_is_leaf_indicator(const Arrangement& arr, const std::vector<long long>& nu) {
    int support = 0, leaf_face = -1;
    for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f) {
        if (nu[f] == 0) continue;
        if (nu[f] != 1) return false;
        ++support;
        leaf_face = f;
    }
    return support == 1 && !arr.faces[leaf_face].is_root && arr.tree_degree(leaf_face) == 1;
}

} // namespace detail

// Runs every invariant of the engine on one instance, including the
// per-deletion suite along its full reduction chain.
inline SuiteResult check_instance(const Instance& inst, int max_wraps = kDefaultMaxWraps,
                                  bool with_reduction = true) {
    SuiteResult out;
    const std::string js = serialize_instance(inst);
    auto rec = [&](const std::string& name, bool good, const std::string& msg = "") {
        out.record(name, good, msg, js);
    };

    // Structure.
    ValidationReport vr = validate(inst);
    rec("validate", vr.valid(), vr.valid() ? "" : vr.rules.back().message);
    if (!vr.valid()) return out;
    rec("serialization_roundtrip", same_instance(parse_instance(serialize_instance(inst)), inst),
        "parse(serialize) changed the instance");

    Model model;
    try {
        model = build_model(inst);
    } catch (const Error& e) {
        rec("build_model", false, e.what());
        return out;
    }
    const Arrangement& arr = model.arr;
    rec("face_count", static_cast<int>(arr.faces.size()) == 2 * inst.n + 2,
        "face count differs from 2n+2");

    {
        bool ok = true;
        for (const auto& leaf : find_leaves(model)) {
            int v = arr.face_of(leaf.face);
            for (auto [w, k] : distance_two(arr, model.tv, v)) {
                (void)k;
                if (model.tv.exactness_coefficient[w] != model.tv.exactness_coefficient[v]) ok = false;
            }
        }
        rec("exactness_coefficients", ok, "c(w) != c(v) for a distance-2 pair");
    }
    {
        // Independent route to the defect: sum of c(f) * area(f).
        Rational alt(0);
        for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f)
            if (!arr.faces[f].area.is_unbounded())
                alt += Rational(model.tv.exactness_coefficient[f]) * arr.finite_area(f);
        rec("defect_zero", exactness_defect(arr, model.tv).is_zero(), "nonzero exactness defect");
        rec("defect_oracle", alt == exactness_defect(arr, model.tv),
            "coefficient route disagrees with the cyclic sum");
    }
    {
        bool ok = true;
        for (int t = 0; t < arr.m; ++t)
            if (arr.arcs[arr.step_arc[t]].upper == arr.arcs[arr.step_arc[(t + 1) % arr.m]].upper)
                ok = false;
        rec("lcycle_alternation", ok, "arc sides fail to alternate along the curve");
    }

    // Lunes and the complex, granular.
    FloerComplex complex;
    try {
        complex = differential(arr, model.tv, model.actions, max_wraps);
        rec("complex_invariants", true, "");
    } catch (const InvariantViolation& e) {
        rec("complex_invariants", false, e.what());
        return out;
    }
    {
        bool leaf_ok = true, pair2_ok = true;
        for (int q = 0; q < arr.m; ++q)
            for (int p = 0; p < arr.m; ++p) {
                if (q == p) continue;
                auto lunes = enumerate_lunes(arr, model.actions, q, p, max_wraps);
                bool any_leaf_lune = false;
                for (const auto& l : lunes) {
                    bool has_leaf = false;
                    for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f)
                        if (l.nu[f] >= 1 && !arr.faces[f].is_root && arr.tree_degree(f) == 1)
                            has_leaf = true;
                    if (!has_leaf) leaf_ok = false;
                    if (detail::lune_is_leaf_indicator(arr, l.nu)) any_leaf_lune = true;
                }
                if (lunes.size() == 2 && any_leaf_lune && arr.m != 2) pair2_ok = false;
            }
        rec("lune_contains_leaf", leaf_ok, "a lune has no leaf face in its support");
        rec("two_lunes_with_leaf_only_base", pair2_ok,
            "a two-lune pair with a leaf lune appeared beyond the base case");
    }
    {
        bool stable = true;
        FloerComplex wider = differential(arr, model.tv, model.actions, max_wraps + 1);
        for (int q = 0; q < arr.m && stable; ++q)
            for (int p = 0; p < arr.m; ++p)
                if (complex.count[q][p] != wider.count[q][p]) stable = false;
        rec("wrap_stability", stable, "lune counts changed when raising the wrap bound");
    }

    // Persistence.
    Barcode bc;
    try {
        auto [b, jb] = barcode(complex);
        bc = b;
        rec("barcode_structure", true, "");
    } catch (const InvariantViolation& e) {
        rec("barcode_structure", false, e.what());
        return out;
    }
    try {
        check_rank_oracle(complex, bc);
        rec("rank_oracle", true, "");
    } catch (const OracleMismatch& e) {
        rec("rank_oracle", false, e.what());
    }
    BarStats stats = bar_stats(bc);
    rec("beta1_le_gamma", stats.betas.empty() || stats.betas.front() <= stats.gamma,
        "boundary depth exceeds the spectral distance");
    {
        ShortestBarReport sb = shortest_bar_leaf_check(model, complex, bc);
        rec("shortest_bar_leaf", sb.ok(),
            "shortest finite bar is not realized by a minimum-area leaf");
        rec("area_gap_bound", sb.skipped || sb.gaps_at_least_beta_min,
            "an odd pair has action gap below the shortest bar length");
    }

    if (!with_reduction) return out;

    // Reduction chain with the per-deletion suite.
    ReductionTrace trace;
    try {
        trace = reduce(inst, TargetPolicy::SmallestEdgeLabel, Rational(0), max_wraps);
        rec("reduce", true, "");
    } catch (const Error& e) {
        rec("reduce", false, e.what());
        return out;
    }
    if (model.actions.distinct()) {
        bool chain = trace.gamma_original <= trace.constructive_cost &&
                     trace.constructive_cost <= trace.theorem_bound &&
                     trace.theorem_bound <=
                         (Rational(std::int64_t(1) << inst.n) - Rational(1)) * trace.gamma_original;
        rec("bound_chain", chain,
            "gamma <= constructive cost <= theorem bound <= (2^n - 1) gamma fails");
    }

    Instance pre_inst = inst;
    for (const auto& step : trace.steps) {
        Model pre = build_model(pre_inst);
        FloerComplex pre_c = differential(pre.arr, pre.tv, pre.actions, max_wraps);
        Barcode pre_bc = barcode(pre_c).first;
        Model post = build_model(step.after);
        post.actions.value = step.event.new_actions;
        FloerComplex post_c = differential(post.arr, post.tv, post.actions, max_wraps);
        Barcode post_bc = barcode(post_c).first;

        StabilityReport st = verify_stability(pre_bc, post_bc, step.event);
        rec("step_stability_beta", st.beta_ok, "finite bar lengths moved more than a(v)+eps");
        rec("step_stability_gamma", st.gamma_ok, "gamma moved more than a(v)+eps");
        rec("step_delta_matching", st.matching_ok, "no (a(v)+eps)/2 matching between the barcodes");
        try {
            chain_maps(pre, pre_c, post, post_c, step.event);
            rec("chain_maps", true, "");
        } catch (const InvariantViolation& e) {
            rec("chain_maps", false, e.what());
        }
        {
            // Index windows for lunes into pbar and out of qbar.
            const DeletionEvent& ev = step.event;
            int m = pre.arr.m, J = ev.leaf.seg, K = ev.k;
            bool ok = true;
            for (int t = 0; t < m; ++t) {
                if (t == ev.leaf.qbar || t == ev.leaf.pbar) continue;
                bool in_jk = detail::in_cyclic_window(t, (J + 2) % m, K, m);
                bool in_kj = detail::in_cyclic_window(t, (K + 1) % m, (J + m - 1) % m, m);
                if (pre_c.count[t][ev.leaf.pbar] % 2 && !(ev.leaf.above ? in_jk : in_kj)) ok = false;
                if (pre_c.count[ev.leaf.qbar][t] % 2 && !(ev.leaf.above ? in_kj : in_jk)) ok = false;
            }
            rec("lemA_windows", ok, "a lune through the deleted corner leaves its index window");
        }
        {
            bool ok = false;
            std::string msg;
            try {
                InsertionSpec spec = derive_insertion(pre, step.event);
                Instance back = insert_leaf(post, spec);
                bool rotation_match = false;
                for (int r = 0; r < 2 * pre_inst.n; ++r)
                    if (same_instance(rotate_labels(back, r), pre_inst)) rotation_match = true;
                Model back_model = build_model(back);
                Leaf again = leaf_by_face(back_model, step.event.leaf.face);
                DeletionResult redo = delete_leaf(back_model, again, step.event.target,
                                                  step.event.epsilon);
                ok = rotation_match && same_instance(redo.instance, step.after);
                if (!rotation_match) msg = "reinsertion is not a relabeling of the original";
                if (!same_instance(redo.instance, step.after))
                    msg = "insert then delete is not the identity";
            } catch (const Error& e) {
                msg = e.what();
            }
            rec("insert_delete_roundtrip", ok, msg);
        }
        rec("defect_preserved", exactness_defect(step.after).is_zero(),
            "deletion broke exactness");
        rec("point_count", step.after.n == pre_inst.n - 1, "point count did not drop by two");

        pre_inst = step.after;
    }
    return out;
}

struct CorpusOptions {
    int count = 500;
    int max_n = 7;
    std::uint64_t seed = 9;
    Rational area_bound = Rational(4);
    int max_wraps = kDefaultMaxWraps;
    int jobs = 1;
};

// Deterministic corpus sweep: instance i has n = 1 + (i mod max_n) and seed
// derived from (seed, i). Output order does not depend on the job count.
inline SuiteResult run_corpus(const CorpusOptions& opt,
                              const std::function<void(int)>& progress = {}) {
    std::vector<SuiteResult> results(opt.count);
    std::vector<Instance> instances(opt.count);
    auto worker = [&](int begin, int step) {
        for (int i = begin; i < opt.count; i += step) {
            int n = 1 + i % opt.max_n;
            Instance inst = random_instance(n, opt.seed + 1000003ull * i, opt.area_bound);
            results[i] = check_instance(inst, opt.max_wraps, true);
            instances[i] = std::move(inst);
            if (progress) progress(i);
        }
    };
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t, jobs);
        for (auto& th : pool) th.join();
    }
    SuiteResult total;
    for (const auto& r : results) total.merge(r);
    return total;
}

} // namespace cylfloer
