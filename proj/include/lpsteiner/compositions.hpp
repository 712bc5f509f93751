#pragma once

// Weight-graded compositions: all tuples (i_1, ..., i_parts) of non-negative
// integers with 1*i_1 + 2*i_2 + ... + parts*i_parts = m.  These index the
// terms of the curvature-product sums in the coefficient layer.
//
// Enumeration order is deterministic: the highest part index varies in the
// outermost loop, ascending.  Equivalently the tuples appear in reverse
// lexicographic order, e.g. (m=2, parts=2) -> (2,0), (0,1) and
// (m=3, parts=2) -> (3,0), (1,1).

#include <cassert>
#include <vector>

namespace lpsteiner {

using WeightedComposition = std::vector<int>;  // i_1 ... i_parts

inline void weighted_compositions_rec(int m, int j, WeightedComposition& cur,
                                      std::vector<WeightedComposition>& out) {
    if (j == 1) {
        cur[0] = m;
        out.push_back(cur);
        return;
    }
    for (int ij = 0; ij * j <= m; ++ij) {
        cur[j - 1] = ij;
        weighted_compositions_rec(m - ij * j, j - 1, cur, out);
    }
}

// All compositions of weight m into parts {1..parts}.  m = 0 yields the single
// all-zero tuple; parts >= 1 required.
inline std::vector<WeightedComposition> weighted_compositions(int m, int parts) {
    assert(m >= 0 && parts >= 1);
    std::vector<WeightedComposition> out;
    WeightedComposition cur(static_cast<std::size_t>(parts), 0);
    weighted_compositions_rec(m, parts, cur, out);
    return out;
}

// Total weight of a composition given part index j has weight j.
inline int composition_weight(const WeightedComposition& c) {
    int w = 0;
    for (std::size_t j = 0; j < c.size(); ++j) w += static_cast<int>(j + 1) * c[j];
    return w;
}

// Number of factors, i.e. i_1 + ... + i_parts.
inline int composition_size(const WeightedComposition& c) {
    int q = 0;
    for (int ij : c) q += ij;
    return q;
}

}  // namespace lpsteiner
