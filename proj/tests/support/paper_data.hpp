#pragma once

// Constructors for the golden inputs used across the test suites: the
// quaternion-regular resolution, the sign-twisted doubled resolution, and
// the norm-one resolution, together with small monomial helpers.

#include <numeric>
#include <vector>

#include "chowtori/groups.hpp"
#include "chowtori/lattice.hpp"
#include "chowtori/symalg.hpp"

namespace chowtori::test_support {

using groups::FiniteActionGroup;
using groups::SignedPermutation;
using lattice::IntegerMatrix;
using lattice::Sublattice;

// Basis of Z^8 ordered e, e', x, x', y, y', z, z'.
enum Q8Var : int { vE = 0, vE2 = 1, vX = 2, vX2 = 3, vY = 4, vY2 = 5, vZ = 6, vZ2 = 7 };

inline FiniteActionGroup q8_group(long bound = 256) {
    SignedPermutation gi({2, 3, 1, 0, 6, 7, 5, 4}, std::vector<int>(8, 1));
    SignedPermutation gj({4, 5, 7, 6, 1, 0, 2, 3}, std::vector<int>(8, 1));
    return FiniteActionGroup::close({gi, gj}, bound);
}

inline IntegerMatrix q8_embedding() {
    IntegerMatrix e(8, 4);
    for (int p = 0; p < 4; ++p) {
        e.at(2 * p, p) = 1;
        e.at(2 * p + 1, p) = 1;
    }
    return e;
}

inline Sublattice q8_phat() {
    std::vector<Vec> gens;
    for (int p = 0; p < 4; ++p) {
        Vec v(8, Int(0));
        v[2 * p] = 1;
        v[2 * p + 1] = 1;
        gens.push_back(std::move(v));
    }
    return Sublattice::from_generators(8, gens);
}

inline int perm_parity(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 ? -1 : 1;
}

// The doubled-rank action: basis a_1^+, a_1^-, ..., a_n^+, a_n^-;
// sigma sends a_i^+ to a_{sigma(i)}^+ for even sigma and to
// a_{sigma(i)}^- for odd sigma (and symmetrically for a_i^-).
inline SignedPermutation doubled_from_perm(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    bool odd = perm_parity(perm) < 0;
    std::vector<int> image(2 * n);
    for (int i = 0; i < n; ++i) {
        image[2 * i] = 2 * perm[i] + (odd ? 1 : 0);
        image[2 * i + 1] = 2 * perm[i] + (odd ? 0 : 1);
    }
    return SignedPermutation(image, std::vector<int>(2 * n, 1));
}

inline std::vector<int> transposition01(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[0], p[1]);
    return p;
}

inline std::vector<int> full_cycle(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
    return p;
}

inline FiniteActionGroup signed_sn_group(int n, long bound = 256) {
    return FiniteActionGroup::close(
        {doubled_from_perm(transposition01(n)), doubled_from_perm(full_cycle(n))}, bound);
}

inline IntegerMatrix signed_sn_embedding(int n) {
    IntegerMatrix e(2 * n, n);
    for (int p = 0; p < n; ++p) {
        e.at(2 * p, p) = 1;
        e.at(2 * p + 1, p) = 1;
    }
    return e;
}

inline Sublattice signed_sn_phat(int n) {
    std::vector<Vec> gens;
    for (int p = 0; p < n; ++p) {
        Vec v(2 * n, Int(0));
        v[2 * p] = 1;
        v[2 * p + 1] = 1;
        gens.push_back(std::move(v));
    }
    return Sublattice::from_generators(2 * n, gens);
}

inline FiniteActionGroup plain_sn_group(int n, long bound = 256) {
    std::vector<SignedPermutation> gens;
    if (n == 1) {
        gens.push_back(SignedPermutation::identity(1));
    } else {
        gens.emplace_back(transposition01(n), std::vector<int>(n, 1));
        gens.emplace_back(full_cycle(n), std::vector<int>(n, 1));
    }
    return FiniteActionGroup::close(gens, bound);
}

inline IntegerMatrix norm_one_embedding(int n) {
    IntegerMatrix e(n, 1);
    for (int i = 0; i < n; ++i) e.at(i, 0) = 1;
    return e;
}

// Coordinate vector of a single monomial given by its variable list.
inline Vec mono(const symalg::GradedPiece& piece, const std::vector<int>& vars, Int coeff = 1) {
    symalg::Monomial m(piece.ambient_rank(), 0);
    for (int v : vars) ++m[v];
    Vec r(piece.size(), Int(0));
    r[piece.index_of(m)] = coeff;
    return r;
}

} // namespace chowtori::test_support
