#pragma once

#include <cstddef>
#include <map>
#include <variant>
#include <vector>

#include "chowtori/groups.hpp"
#include "chowtori/lattice.hpp"

namespace chowtori::symalg {

inline constexpr int kDefaultDegreeCap = 6;

// Exponent vector over a fixed ambient basis.
using Monomial = std::vector<int>;

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

// The degree-d slice of S(Z^n): the full list of degree-d monomials in
// graded-lex order (exponent vectors descending), plus index lookup.
// Elements of the piece are integer coordinate vectors over `basis`.
class GradedPiece {
public:
    GradedPiece() = default;
    GradedPiece(int ambient_rank, int degree);

    int ambient_rank() const { return ambient_rank_; }
    int degree() const { return degree_; }
    std::size_t size() const { return basis_.size(); }
    const std::vector<Monomial>& basis() const { return basis_; }
    const Monomial& monomial(std::size_t i) const { return basis_[i]; }
    std::size_t index_of(const Monomial& m) const;

private:
    int ambient_rank_ = 0;
    int degree_ = 0;
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t> index_;
};

GradedPiece monomial_basis(int n, int d);

// Throws resource_error when d exceeds the configured cap.
void check_degree_cap(int d, int cap);

// The action of every element of a group on one graded piece. Signed
// permutation base actions stay signed permutations of the monomial
// basis; matrix base actions become symmetric-power matrices.
class SymmetricAction {
public:
    using SignedImages = std::vector<groups::SignedPermutation>;
    using MatrixImages = std::vector<lattice::IntegerMatrix>;

    SymmetricAction() = default;
    SymmetricAction(const groups::FiniteActionGroup* group, GradedPiece piece,
                    SignedImages images)
        : group_(group), piece_(std::move(piece)), images_(std::move(images)) {}
    SymmetricAction(const groups::FiniteActionGroup* group, GradedPiece piece,
                    MatrixImages images)
        : group_(group), piece_(std::move(piece)), images_(std::move(images)) {}

    const groups::FiniteActionGroup& group() const { return *group_; }
    const GradedPiece& piece() const { return piece_; }
    bool is_signed() const { return std::holds_alternative<SignedImages>(images_); }
    const groups::SignedPermutation& signed_image(std::size_t i) const {
        return std::get<SignedImages>(images_)[i];
    }
    lattice::IntegerMatrix matrix_image(std::size_t i) const;

    Vec apply(std::size_t element, const Vec& v) const;

private:
    const groups::FiniteActionGroup* group_ = nullptr;
    GradedPiece piece_;
    std::variant<SignedImages, MatrixImages> images_;
};

// Degree-d action induced by the group's signed permutation action.
SymmetricAction symmetric_power_action(const groups::FiniteActionGroup& g, int d);
// Degree-d action induced by an arbitrary matrix action; recognizes when
// all images stay signed permutations of the monomial basis.
SymmetricAction symmetric_power_action(const groups::MatrixAction& base, int d);

// Product S_e x S_f -> S_{e+f}; bilinear and commutative.
Vec multiply(const GradedPiece& pe, const Vec& u, const GradedPiece& pf, const Vec& v,
             const GradedPiece& out);

enum class InvariantsMethod { Auto, OrbitSums, Kernel };

// The full invariant subgroup of the piece under a subgroup. Orbit sums
// for signed actions (an orbit with a sign conflict contributes nothing),
// the kernel of stacked (image - id) otherwise.
lattice::Sublattice invariants(const SymmetricAction& act, const groups::SubgroupHandle& over,
                               InvariantsMethod method = InvariantsMethod::Auto);

// Functorial symmetric power of a linear map f: Z^m -> Z^n (an n x m
// matrix) in degree e.
lattice::IntegerMatrix sym_power_map(const lattice::IntegerMatrix& f, int e);

// Degree-d piece of the ideal generated by the embedded degree-1
// subspace: the span of column_j(embedding) * m over monomials m of
// degree d-1.
lattice::Sublattice ideal_piece(const lattice::IntegerMatrix& embedding, int d);

// Sum of translates over left-coset representatives. z must be invariant
// under the subgroup (checked).
Vec induce(const Vec& z, const groups::SubgroupHandle& from, const SymmetricAction& act);

// One resolution's static data, shared by the ideal computations.
struct ResolutionData {
    const groups::FiniteActionGroup* group = nullptr;
    lattice::IntegerMatrix phat_matrix;  // N x r, columns are the P-basis
    groups::MatrixAction phat_action;    // in the same column basis
};

struct InducedGenerator {
    Vec vector;              // element of S(Q)_d
    std::size_t e = 0;       // degree of the P-side factor
    std::size_t p_index = 0; // row in the invariant basis of S(P)_e
    std::size_t q_index = 0; // row in the invariant basis of S(Q)_{d-e}
};

// Generators of Ind((S(P)^+)^H * S(Q)^H) in degree d, with provenance.
std::vector<InducedGenerator> induced_generator_family(const ResolutionData& res,
                                                       const groups::SubgroupHandle& h, int d,
                                                       InvariantsMethod method = InvariantsMethod::Auto);

lattice::Sublattice induced_contribution(const ResolutionData& res,
                                         const groups::SubgroupHandle& h, int d,
                                         InvariantsMethod method = InvariantsMethod::Auto);

} // namespace chowtori::symalg
