// Test-only cohomology ring fixtures shared by the unit and acceptance suites.
#pragma once

#include "assoc/qcoh.hpp"

namespace assoc::testing {

// b3 = 2 model: two 3-classes x1, x2 and their dual 4-classes y1, y2 with
// x_i cup y_j = delta_ij vol and all other positive-degree products zero.
inline CohRingData two_sphere_ring() {
    CohRingData r;
    r.betti = {1, 0, 0, 2, 2, 0, 0, 1};
    auto& unit0 = r.cup[{0, 0}];
    unit0 = {{RatVec{Rat(1)}}};
    auto block = [&](int k, int l) -> std::vector<std::vector<RatVec>>& {
        auto& b = r.cup[{k, l}];
        b.assign((size_t)r.betti[k],
                 std::vector<RatVec>((size_t)r.betti[l], RatVec((size_t)r.betti[k + l], Rat(0))));
        return b;
    };
    for (int l : {3, 4, 7}) {
        auto& b0l = block(0, l);
        auto& bl0 = block(l, 0);
        for (int j = 0; j < r.betti[l]; ++j) {
            b0l[0][(size_t)j][(size_t)j] = 1;
            bl0[(size_t)j][0][(size_t)j] = 1;
        }
    }
    auto& b34 = block(3, 4);
    auto& b43 = block(4, 3);
    for (int i = 0; i < 2; ++i) {
        b34[(size_t)i][(size_t)i][0] = 1;
        b43[(size_t)i][(size_t)i][0] = 1;  // degree 3*4 even: symmetric
    }
    block(3, 3);  // identically zero into H^6 = 0
    r.pd = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    r.pairing = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    return r;
}

// T^3 x S^4 model ring: exterior algebra on three degree-1 classes tensored
// with a degree-4 class. Basis of H^k: pairs (subset of {1,2,3}, s in {0,1})
// of degree |subset| + 4 s, ordered lexicographically per degree.
struct TorusBasis {
    std::vector<std::pair<unsigned, int>> byDegree[8];
};

inline TorusBasis torus_basis() {
    TorusBasis tb;
    for (int s = 0; s <= 1; ++s)
        for (unsigned mask = 0; mask < 8; ++mask) {
            int deg = __builtin_popcount(mask) + 4 * s;
            tb.byDegree[deg].push_back({mask, s});
        }
    return tb;
}

inline int shuffle_sign(unsigned a, unsigned b) {
    // sign of merging the ordered index sets a, b (disjoint)
    int sign = 1;
    for (int i = 0; i < 3; ++i) {
        if (!(b & (1u << i))) continue;
        int above = 0;
        for (int j = i + 1; j < 3; ++j)
            if (a & (1u << j)) ++above;
        if (above % 2) sign = -sign;
    }
    return sign;
}

inline CohRingData torus_s4_ring() {
    CohRingData r;
    TorusBasis tb = torus_basis();
    for (int d = 0; d <= 7; ++d) r.betti[d] = (int)tb.byDegree[d].size();
    for (int k = 0; k <= 7; ++k)
        for (int l = 0; k + l <= 7; ++l) {
            auto& block = r.cup[{k, l}];
            block.assign((size_t)r.betti[k],
                         std::vector<RatVec>((size_t)r.betti[l],
                                             RatVec((size_t)r.betti[k + l], Rat(0))));
            for (int i = 0; i < r.betti[k]; ++i)
                for (int j = 0; j < r.betti[l]; ++j) {
                    auto [ma, sa] = tb.byDegree[k][(size_t)i];
                    auto [mb, sb] = tb.byDegree[l][(size_t)j];
                    if ((ma & mb) || sa + sb > 1) continue;
                    // moving the degree-4 factor past degree-1 forms is free:
                    // 4 is even, so only the exterior shuffle sign appears
                    int sign = shuffle_sign(ma, mb);
                    unsigned mc = ma | mb;
                    int sc = sa + sb;
                    const auto& out = tb.byDegree[k + l];
                    for (size_t m = 0; m < out.size(); ++m)
                        if (out[m] == std::make_pair(mc, sc)) block[(size_t)i][(size_t)j][m] = sign;
                }
        }
    // H_3 has rank 1 (the torus factor); pd sends it to the S^4 class
    r.pd = {{Rat(1)}};
    r.pairing = {{Rat(1)}};
    return r;
}


}  // namespace assoc::testing
