#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace hodgelab {

// Strictly increasing index sets over {0..n-1} as bitmasks.  All exterior
// algebra signs reduce to insertion and merge parities on these masks.
using IndexMask = std::uint32_t;

inline int maskRank(IndexMask m) { return std::popcount(m); }

inline IndexMask maskBit(int i) { return IndexMask(1) << i; }

inline bool maskContains(IndexMask m, int i) { return (m >> i) & 1u; }

// Number of set bits strictly below position i.
inline int maskCountBelow(IndexMask m, int i) {
    return std::popcount(m & ((IndexMask(1) << i) - 1u));
}

// Sign of sorting e_i ^ e_S into e_{S+i}; requires i not in S.
inline int insertionSign(int i, IndexMask s) {
    return (maskCountBelow(s, i) % 2 == 0) ? 1 : -1;
}

// Sign of sorting e_A ^ e_B into e_{A|B}; requires A, B disjoint.
inline int mergeSign(IndexMask a, IndexMask b) {
    int inversions = 0;
    IndexMask rest = b;
    while (rest) {
        int i = std::countr_zero(rest);
        rest &= rest - 1u;
        inversions += std::popcount(a & ~((IndexMask(2) << i) - 1u));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

// Position (0-based) of i within the sorted elements of S; requires i in S.
inline int maskPosition(IndexMask s, int i) { return maskCountBelow(s, i); }

inline std::vector<int> maskToList(IndexMask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1u;
    }
    return out;
}

inline IndexMask listToMask(const std::vector<int>& xs) {
    IndexMask m = 0;
    for (int x : xs) m |= IndexMask(1) << x;
    return m;
}

// All masks over {0..n-1} with the given rank, in increasing numeric order.
inline std::vector<IndexMask> masksOfRank(int n, int rank) {
    std::vector<IndexMask> out;
    for (IndexMask m = 0; m < (IndexMask(1) << n); ++m)
        if (std::popcount(m) == rank) out.push_back(m);
    return out;
}

} // namespace hodgelab
