#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace cylfloer::gf2 {

// Dense Z2 vectors as 64-bit masks, one bit per generator.

inline int rank(std::vector<std::uint64_t> cols) {
    int r = 0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        std::uint64_t c = cols[i];
        if (!c) continue;
        int pivot = 63 - std::countl_zero(c);
        ++r;
        for (std::size_t k = i + 1; k < cols.size(); ++k)
            if (cols[k] >> pivot & 1) cols[k] ^= c;
    }
    return r;
}

// Basis of { x : sum of chosen columns = 0 } expressed in the column index set,
// returned as masks over column positions.
inline std::vector<std::uint64_t> kernel(const std::vector<std::uint64_t>& cols) {
    std::vector<std::uint64_t> work(cols);
    std::vector<std::uint64_t> combo(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) combo[i] = 1ull << i;
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            if (!work[k]) continue;
            int pivot = 63 - std::countl_zero(work[k]);
            if (work[i] >> pivot & 1) {
                work[i] ^= work[k];
                combo[i] ^= combo[k];
            }
        }
        if (!work[i]) out.push_back(combo[i]);
    }
    return out;
}

// Images of the basis masks under "mask of column indices -> xor of columns".
inline std::uint64_t apply(const std::vector<std::uint64_t>& cols, std::uint64_t index_mask) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (index_mask >> i & 1) v ^= cols[i];
    return v;
}

} // namespace cylfloer::gf2
