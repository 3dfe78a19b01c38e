#pragma once

#include "cylfloer/bound.hpp"

#include <random>
#include <vector>

namespace cylfloer {

namespace detail {

// mt19937_64 is fully specified, so draws are reproducible across platforms;
// the helpers below avoid std::uniform_int_distribution, which is not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    Rational rational_in(const Rational& bound) {
        static constexpr int dens[] = {1, 2, 3, 4, 5, 6, 8, 12, 16};
        std::int64_t d = dens[below(9)];
        std::int64_t hi = (__int128(bound.num()) * d) / bound.den();
        while (hi < 1) {
            d *= 2;
            hi = (__int128(bound.num()) * d) / bound.den();
        }
        std::int64_t k = 1 + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi));
        return Rational(k, d);
    }

    // A proper fraction k/d used to split a weight into two positive parts.
    Rational proper_fraction() {
        static constexpr int dens[] = {2, 3, 4, 5, 8, 16};
        int d = dens[below(6)];
        int k = 1 + below(d - 1);
        return Rational(k, d);
    }

private:
    std::mt19937_64 engine_;
};

inline Instance base_instance(const Rational& lens_area) {
    Instance inst;
    inst.n = 1;
    inst.top.root = "R1";
    inst.top.vertices = {{"R1", Weight::unbounded()}, {"f0", Weight::of(lens_area)}};
    inst.top.edges = {{2, "R1", "f0"}};
    inst.bottom.root = "R2";
    inst.bottom.vertices = {{"R2", Weight::unbounded()}, {"f1", Weight::of(lens_area)}};
    inst.bottom.edges = {{1, "f1", "R2"}};
    return inst;
}

} // namespace detail

// Deterministic in (n, seed, area bound): grows the unique two-point shape by
// n-1 random leaf insertions, rejecting and retrying (whole builds) until the
// action spectrum is free of ties.
inline Instance random_instance(int n, std::uint64_t seed, const Rational& area_bound = Rational(4),
                                int max_attempts = 64) {
    if (n < 1 || n > kMaxN) throw ValidationError("random_instance: n out of range");
    if (area_bound.sign() <= 0) throw ValidationError("random_instance: area bound must be positive");

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        detail::Rng rng(seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(attempt));
        Instance current = detail::base_instance(rng.rational_in(area_bound));
        int fresh = 2;
        bool failed = false;
        while (current.n < n) {
            Model model = build_model(current);
            const Arrangement& arr = model.arr;
            bool inserted = false;
            for (int tries = 0; tries < 200 && !inserted; ++tries) {
                InsertionSpec spec;
                spec.seg = rng.below(arr.m);
                spec.leaf_above = rng.below(2) == 0;
                int M = spec.leaf_above ? arr.seg_down[spec.seg] : arr.seg_up[spec.seg];
                std::vector<int> arc_items;
                for (const auto& item : arr.face_boundary[M])
                    if (item.is_arc) arc_items.push_back(item.index);
                const Arc& alpha = arr.arcs[arc_items[rng.below(static_cast<int>(arc_items.size()))]];
                spec.arc = {alpha.a, alpha.b};
                int F = alpha.left == M ? alpha.right : alpha.left;
                spec.area = rng.rational_in(area_bound);
                std::vector<int> sources;
                for (int j = 0; j < arr.m; ++j) {
                    for (int u : {arr.seg_up[j], arr.seg_down[j]}) {
                        int other = u == arr.seg_up[j] ? arr.seg_down[j] : arr.seg_up[j];
                        if (other != F || u == M) continue;
                        if (arr.faces[u].area.is_unbounded() || arr.faces[u].area.value() > spec.area)
                            sources.push_back(u);
                    }
                }
                if (sources.empty()) continue;
                std::sort(sources.begin(), sources.end());
                sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
                spec.source = arr.faces[sources[rng.below(static_cast<int>(sources.size()))]].id;
                if (arr.faces[M].area.is_unbounded()) {
                    Rational part = rng.rational_in(area_bound);
                    if (rng.below(2) == 0) {
                        spec.w1 = Weight::unbounded();
                        spec.w2 = Weight::of(part);
                    } else {
                        spec.w1 = Weight::of(part);
                        spec.w2 = Weight::unbounded();
                    }
                } else {
                    Rational w1 = arr.faces[M].area.value() * rng.proper_fraction();
                    spec.w1 = Weight::of(w1);
                    spec.w2 = Weight::of(arr.faces[M].area.value() - w1);
                }
                spec.leaf_id = "f" + std::to_string(fresh);
                spec.piece_id = "f" + std::to_string(fresh + 1);
                try {
                    current = insert_leaf(model, spec);
                    fresh += 2;
                    inserted = true;
                } catch (const ValidationError&) {
                    continue;
                }
            }
            if (!inserted) {
                failed = true;
                break;
            }
        }
        if (failed) continue;
        if (action_table(current).distinct()) return current;
    }
    throw GenerationExhausted("random_instance: no tie-free instance after " +
                              std::to_string(max_attempts) + " attempts");
}

} // namespace cylfloer
