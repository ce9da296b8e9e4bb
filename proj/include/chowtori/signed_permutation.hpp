#pragma once

#include <string>
#include <vector>

#include "chowtori/matrix.hpp"

namespace chowtori::groups {

// Monomial symmetry of Z^n: basis vector e_i maps to sign[i] * e_image[i].
// Indices are 0-based internally; file formats use one-line notation.
struct SignedPermutation {
    std::vector<int> image;
    std::vector<int> sign; // each +1 or -1

    SignedPermutation() = default;
    SignedPermutation(std::vector<int> img, std::vector<int> sgn);

    static SignedPermutation identity(std::size_t n);

    std::size_t degree() const { return image.size(); }
    bool is_identity() const;
    bool is_pure_permutation() const;

    // (g*h)(i) = g(h(i)), sign_{g*h}(i) = sign_g(h(i)) * sign_h(i)
    friend SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h);
    SignedPermutation inverse() const;

    lattice::IntegerMatrix to_matrix() const;

    bool operator==(const SignedPermutation& rhs) const {
        return image == rhs.image && sign == rhs.sign;
    }
    bool operator<(const SignedPermutation& rhs) const {
        if (image != rhs.image) return image < rhs.image;
        return sign < rhs.sign;
    }

    std::string to_string() const;
};

// Recognize a matrix that is a signed permutation in the given basis.
bool as_signed_permutation(const lattice::IntegerMatrix& m, SignedPermutation& out);

} // namespace chowtori::groups
