#pragma once

#include "cylfloer/lunes.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace cylfloer {

// Half-open bar [birth, death); no death means an infinite bar [birth, inf).
struct Bar {
    Rational birth;
    std::optional<Rational> death;

    bool infinite() const { return !death.has_value(); }
    Rational length() const {
        if (infinite()) throw Error("Bar: infinite bar has no length");
        return *death - birth;
    }
    friend bool operator==(const Bar& a, const Bar& b) {
        return a.birth == b.birth && a.death == b.death;
    }
    friend bool operator<(const Bar& a, const Bar& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.infinite() != b.infinite()) return b.infinite();
        if (a.infinite()) return false;
        return *a.death < *b.death;
    }
};

struct Barcode {
    std::vector<Bar> finite;   // sorted by (birth, death)
    std::vector<Bar> infinite; // sorted by birth

    void sort() {
        std::sort(finite.begin(), finite.end());
        std::sort(infinite.begin(), infinite.end());
    }
    friend bool operator==(const Barcode& a, const Barcode& b) {
        return a.finite == b.finite && a.infinite == b.infinite;
    }
};

struct BarStats {
    std::vector<Rational> betas; // finite bar lengths, descending
    Rational gamma;              // difference of the two infinite-bar births
    std::optional<Rational> beta_min;
};

inline BarStats bar_stats(const Barcode& b) {
    BarStats s;
    for (const auto& bar : b.finite) s.betas.push_back(bar.length());
    std::sort(s.betas.begin(), s.betas.end(), [](const Rational& x, const Rational& y) { return y < x; });
    if (b.infinite.size() != 2) throw Error("bar_stats: expected exactly two infinite bars");
    s.gamma = b.infinite[1].birth - b.infinite[0].birth;
    if (!s.betas.empty()) s.beta_min = s.betas.back();
    return s;
}

// Orthogonal Jordan basis: de_i = f_i, dg = 0, and the action of any
// combination is the largest action among its supports. Chains are point masks.
struct JordanBasis {
    std::vector<std::uint64_t> e, f;
    std::vector<std::uint64_t> g;
};

namespace detail {

inline void verify_barcode_against_spectrum(const Barcode& bc, const FloerComplex& c) {
    int n = c.m / 2;
    if (static_cast<int>(bc.finite.size()) != n - 1 || bc.infinite.size() != 2)
        throw InvariantViolation("barcode has " + std::to_string(bc.finite.size()) + " finite and " +
                                 std::to_string(bc.infinite.size()) + " infinite bars, expected " +
                                 std::to_string(n - 1) + " and 2");
    std::multiset<Rational> endpoints, spectrum;
    for (const auto& b : bc.finite) {
        endpoints.insert(b.birth);
        endpoints.insert(*b.death);
    }
    for (const auto& b : bc.infinite) endpoints.insert(b.birth);
    for (int p = 0; p < c.m; ++p) spectrum.insert(c.actions[p]);
    if (endpoints != spectrum)
        throw InvariantViolation("bar endpoints do not reproduce the action spectrum");
}

} // namespace detail

// Filtration-ordered column reduction. Pivot = highest (action, index)
// coordinate; the recorded combinations form the Jordan basis directly.
inline std::pair<Barcode, JordanBasis> barcode(const FloerComplex& c) {
    std::vector<std::uint64_t> reduced(c.m, 0); // reduced column per death point
    std::vector<std::uint64_t> combo(c.m, 0);   // the chain whose boundary that column is
    std::vector<int> owner(c.m, -1);            // pivot point -> death point

    Barcode bc;
    JordanBasis jb;
    for (int pos = 0; pos < c.m; ++pos) {
        int gen = c.order[pos];
        std::uint64_t col = c.bnd[gen];
        std::uint64_t v = 1ull << gen;
        while (col) {
            int piv = c.leading(col);
            if (owner[piv] == -1) break;
            col ^= reduced[owner[piv]];
            v ^= combo[owner[piv]];
        }
        reduced[gen] = col;
        combo[gen] = v;
        if (col) {
            int piv = c.leading(col);
            owner[piv] = gen;
            jb.e.push_back(v);
            jb.f.push_back(col);
            bc.finite.push_back({c.actions[piv], c.actions[gen]});
        }
    }
    for (int pos = 0; pos < c.m; ++pos) {
        int gen = c.order[pos];
        if (reduced[gen]) continue;
        if (owner[gen] != -1) continue; // killed later: paired as a birth
        jb.g.push_back(combo[gen]);
        bc.infinite.push_back({c.actions[gen], std::nullopt});
    }
    bc.sort();

    // Orthogonality: the 2n basis chains must carry pairwise distinct leading
    // generators; each chain's action is then the action of its leading term.
    std::uint64_t leads = 0;
    auto take = [&](std::uint64_t chain) {
        int l = c.leading(chain);
        if (l < 0 || (leads >> l & 1))
            throw InvariantViolation("Jordan basis is not orthogonal");
        leads |= 1ull << l;
    };
    for (auto v : jb.e) take(v);
    for (auto v : jb.f) take(v);
    for (auto v : jb.g) take(v);
    for (std::size_t i = 0; i < jb.e.size(); ++i) {
        std::uint64_t de = 0;
        for (int p = 0; p < c.m; ++p)
            if (jb.e[i] >> p & 1) de ^= c.bnd[p];
        if (de != jb.f[i]) throw InvariantViolation("Jordan basis violates de_i = f_i");
    }
    for (auto gv : jb.g) {
        std::uint64_t dg = 0;
        for (int p = 0; p < c.m; ++p)
            if (gv >> p & 1) dg ^= c.bnd[p];
        if (dg) throw InvariantViolation("Jordan basis violates dg = 0");
    }
    detail::verify_barcode_against_spectrum(bc, c);
    return {bc, jb};
}

// Independent verification path: persistent ranks of the inclusion maps over
// the spectrum grid, turned into bar multiplicities by inclusion-exclusion.
inline Barcode barcode_rank_oracle(const FloerComplex& c) {
    std::vector<Rational> values;
    for (int p = 0; p < c.m; ++p) values.push_back(c.actions[p]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    int k = static_cast<int>(values.size());

    // Point masks of the filtration levels.
    std::vector<std::uint64_t> level(k, 0);
    for (int i = 0; i < k; ++i)
        for (int p = 0; p < c.m; ++p)
            if (c.actions[p] <= values[i]) level[i] |= 1ull << p;

    // Kernel of the boundary restricted to a level, as point masks.
    auto kernel_in = [&](int i) {
        std::vector<std::uint64_t> cols;
        std::vector<int> gens;
        for (int p = 0; p < c.m; ++p)
            if (level[i] >> p & 1) {
                cols.push_back(c.bnd[p]);
                gens.push_back(p);
            }
        std::vector<std::uint64_t> basis;
        for (std::uint64_t idx : gf2::kernel(cols)) {
            std::uint64_t v = 0;
            for (std::size_t t = 0; t < gens.size(); ++t)
                if (idx >> t & 1) v |= 1ull << gens[t];
            basis.push_back(v);
        }
        return basis;
    };
    auto image_in = [&](int i) {
        std::vector<std::uint64_t> cols;
        for (int p = 0; p < c.m; ++p)
            if ((level[i] >> p & 1) && c.bnd[p]) cols.push_back(c.bnd[p]);
        return cols;
    };

    // beta[i][j] = rank of H(level i) -> H(level j), 1-based with 0 = empty.
    std::vector<std::vector<int>> beta(k + 1, std::vector<int>(k + 1, 0));
    for (int i = 1; i <= k; ++i) {
        auto ker = kernel_in(i - 1);
        for (int j = i; j <= k; ++j) {
            auto im = image_in(j - 1);
            std::vector<std::uint64_t> joint = ker;
            joint.insert(joint.end(), im.begin(), im.end());
            int dim_meet = static_cast<int>(ker.size()) + gf2::rank(im) - gf2::rank(joint);
            beta[i][j] = static_cast<int>(ker.size()) - dim_meet;
        }
    }

    Barcode bc;
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            int mult = beta[i][j - 1] - beta[i - 1][j - 1] - beta[i][j] + beta[i - 1][j];
            for (int t = 0; t < mult; ++t) bc.finite.push_back({values[i - 1], values[j - 1]});
        }
        int inf = beta[i][k] - beta[i - 1][k];
        for (int t = 0; t < inf; ++t) bc.infinite.push_back({values[i - 1], std::nullopt});
    }
    bc.sort();
    return bc;
}

inline void check_rank_oracle(const FloerComplex& c, const Barcode& main) {
    Barcode oracle = barcode_rank_oracle(c);
    if (!(oracle == main))
        throw OracleMismatch("rank oracle disagrees with the column-reduction barcode");
}

// --- delta matching -----------------------------------------------------------

struct Matching {
    bool exists = false;
    // Pairs of indices into the combined bar lists (finite then infinite).
    std::vector<std::pair<int, int>> pairs;
};

namespace detail {

struct MatchProblem {
    std::vector<Bar> a, b;
    std::vector<bool> a_long, b_long;
    std::vector<std::vector<int>> compat; // per a-index, compatible b-indices
};

inline bool try_augment(const MatchProblem& pb, int a, std::vector<int>& mb, std::vector<int>& ma,
                        std::vector<bool>& visited, const std::vector<bool>& allow_b) {
    for (int b : pb.compat[a]) {
        if (!allow_b[b] || visited[b]) continue;
        visited[b] = true;
        if (mb[b] == -1 || try_augment(pb, mb[b], mb, ma, visited, allow_b)) {
            mb[b] = a;
            ma[a] = b;
            return true;
        }
    }
    return false;
}

} // namespace detail

// Decides whether a bijection of sub-multisets exists that covers every bar
// longer than 2*delta on both sides and moves endpoints by at most delta;
// infinite bars match infinite bars only. Two one-sided matchings are merged
// along alternating paths into one covering both requirement sets.
inline Matching delta_matching_exists(const Barcode& b1, const Barcode& b2, const Rational& delta) {
    detail::MatchProblem pb;
    auto load = [&](const Barcode& bc, std::vector<Bar>& bars, std::vector<bool>& lng) {
        for (const auto& bar : bc.finite) {
            bars.push_back(bar);
            lng.push_back(bar.length() > delta * Rational(2));
        }
        for (const auto& bar : bc.infinite) {
            bars.push_back(bar);
            lng.push_back(true);
        }
    };
    load(b1, pb.a, pb.a_long);
    load(b2, pb.b, pb.b_long);
    pb.compat.resize(pb.a.size());
    for (std::size_t i = 0; i < pb.a.size(); ++i)
        for (std::size_t j = 0; j < pb.b.size(); ++j) {
            const Bar& x = pb.a[i];
            const Bar& y = pb.b[j];
            if (x.infinite() != y.infinite()) continue;
            if ((x.birth - y.birth).abs() > delta) continue;
            if (!x.infinite() && (*x.death - *y.death).abs() > delta) continue;
            pb.compat[i].push_back(static_cast<int>(j));
        }

    int na = static_cast<int>(pb.a.size()), nb = static_cast<int>(pb.b.size());
    std::vector<bool> all_b(nb, true);

    // M1: saturate the long bars of side a.
    std::vector<int> ma1(na, -1), mb1(nb, -1);
    for (int a = 0; a < na; ++a) {
        if (!pb.a_long[a]) continue;
        std::vector<bool> visited(nb, false);
        if (!detail::try_augment(pb, a, mb1, ma1, visited, all_b)) return {};
    }
    // M2: saturate the long bars of side b (same graph, restricted right side).
    std::vector<int> ma2(na, -1), mb2(nb, -1);
    {
        std::vector<bool> long_b(nb);
        for (int b = 0; b < nb; ++b) long_b[b] = pb.b_long[b];
        for (int a = 0; a < na; ++a) {
            std::vector<bool> visited(nb, false);
            detail::try_augment(pb, a, mb2, ma2, visited, long_b);
        }
        for (int b = 0; b < nb; ++b)
            if (pb.b_long[b] && mb2[b] == -1) return {};
    }

    // Merge: start from M2 and pull in the M1 edges of uncovered long a-bars,
    // displacing along alternating paths. A displaced endpoint is never long.
    std::vector<int> ma(ma2), mb(mb2);
    for (int a0 = 0; a0 < na; ++a0) {
        if (!pb.a_long[a0] || ma[a0] != -1) continue;
        int cur = a0;
        while (cur != -1 && ma1[cur] != -1) {
            int b = ma1[cur];
            int displaced = mb[b];
            if (displaced != -1) ma[displaced] = -1;
            ma[cur] = b;
            mb[b] = cur;
            cur = displaced;
        }
    }
    for (int a = 0; a < na; ++a)
        if (pb.a_long[a] && ma[a] == -1)
            throw Error("delta matching merge failed to cover a required bar");
    for (int b = 0; b < nb; ++b)
        if (pb.b_long[b] && mb[b] == -1)
            throw Error("delta matching merge failed to cover a required bar");

    Matching m;
    m.exists = true;
    for (int a = 0; a < na; ++a)
        if (ma[a] != -1) m.pairs.push_back({a, ma[a]});
    return m;
}

} // namespace cylfloer
