#ifndef TORIC_TEST_FIXTURES_HPP
#define TORIC_TEST_FIXTURES_HPP

#include <initializer_list>
#include <vector>

#include "toric/fan.hpp"

namespace fixtures {

using namespace toric;

inline IVec iv(std::initializer_list<long> xs) {
    IVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline RVec rv(std::initializer_list<long> xs) {
    RVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// affine plane C^2: rays e1, e2, one maximal cone
inline Fan c2() { return Fan::build(2, {iv({1, 0}), iv({0, 1})}, {{0, 1}}); }

// affine space C^n
inline Fan cn(int n) {
    std::vector<IVec> rays;
    std::vector<int> all;
    for (int i = 0; i < n; ++i) {
        IVec e(n, Int(0));
        e[i] = 1;
        rays.push_back(e);
        all.push_back(i);
    }
    return Fan::build(n, rays, {all});
}

// projective plane: rays e1, e2, -e1-e2
inline Fan p2() {
    return Fan::build(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}

// projective n-space: rays e1..en and -(e1+...+en); maximal cones are all
// n-subsets of the rays
inline Fan pn(int n) {
    std::vector<IVec> rays;
    for (int i = 0; i < n; ++i) {
        IVec e(n, Int(0));
        e[i] = 1;
        rays.push_back(e);
    }
    rays.push_back(IVec(n, Int(-1)));
    std::vector<std::vector<int>> mx;
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<int> s;
        for (int i = 0; i <= n; ++i)
            if (i != skip) s.push_back(i);
        mx.push_back(s);
    }
    return Fan::build(n, rays, mx);
}

// Inner product on M for the P^n fan viewed inside the sum-zero sublattice of
// Z^(n+1) with basis b_i = e_i - e_{i+1}: the metric on N is the tridiagonal
// Gram matrix B^T B, so the metric on M is its inverse, scaled to be integral:
// G_ij = min(i,j) * (n + 1 - max(i,j)).
inline IMat pn_gram(int n) {
    IMat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.at(i, j) = Int((std::min(i, j) + 1) * (n - std::max(i, j)));
    return g;
}

// P^1 x P^1: rays e1, e2, -e1, -e2
inline Fan p1p1() {
    return Fan::build(2, {iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({0, -1})},
                      {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// blow-up of C^2 at the origin: rays e1, e2, e1+e2
inline Fan blowup_c2() {
    return Fan::build(2, {iv({1, 0}), iv({0, 1}), iv({1, 1})}, {{0, 2}, {1, 2}});
}

// weighted projective space P(1,1,2): simplicial, complete, not smooth
inline Fan p112() {
    return Fan::build(2, {iv({1, 0}), iv({0, 1}), iv({-1, -2})}, {{0, 1}, {1, 2}, {0, 2}});
}

// P^1 x P^1 x P^1: rays +-e1, +-e2, +-e3, one maximal cone per octant
inline Fan p1p1p1() {
    std::vector<IVec> rays;
    for (int s = 0; s < 2; ++s)
        for (int i = 0; i < 3; ++i) {
            IVec e(3, Int(0));
            e[i] = s == 0 ? 1 : -1;
            rays.push_back(e);
        }
    std::vector<std::vector<int>> mx;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> c;
        for (int i = 0; i < 3; ++i) c.push_back(i + ((mask >> i) & 1 ? 3 : 0));
        mx.push_back(c);
    }
    return Fan::build(3, rays, mx);
}

// the half line in Z: affine C^1
inline Fan halfline() { return Fan::build(1, {iv({1})}, {{0}}); }

// cone over a square: non-simplicial affine 3-fold
inline Fan cone_over_square() {
    return Fan::build(3, {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})},
                      {{0, 1, 2, 3}});
}

} // namespace fixtures

#endif
