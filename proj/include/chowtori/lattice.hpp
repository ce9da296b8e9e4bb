#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chowtori/matrix.hpp"

namespace chowtori::lattice {

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...,
// all diagonal entries nonnegative, zeros trailing.
struct SmithDecomposition {
    IntegerMatrix u, d, v;

    std::size_t rank() const;
    // Nonzero diagonal entries, in order.
    Vec invariant_factors() const;
};

SmithDecomposition smith_normal_form(const IntegerMatrix& a);

// Canonical row-style Hermite form: pivots positive, strictly increasing
// pivot columns, entries above a pivot reduced into [0, pivot). Zero rows
// are kept (callers that want a basis drop them).
IntegerMatrix hermite_normal_form(const IntegerMatrix& m);
// Variant that also returns unimodular U with U*M = H.
IntegerMatrix hermite_normal_form(const IntegerMatrix& m, IntegerMatrix& transform);

// Inverse of a unimodular square matrix.
IntegerMatrix inverse_unimodular(const IntegerMatrix& u);

// A subgroup of Z^ambient_rank held in canonical HNF, one generator per
// row. Canonical form makes equality structural.
class Sublattice {
public:
    Sublattice() : ambient_rank_(0) {}

    static Sublattice zero(std::size_t ambient_rank);
    static Sublattice full(std::size_t ambient_rank);
    static Sublattice from_generators(std::size_t ambient_rank, const std::vector<Vec>& vectors);
    static Sublattice from_matrix_rows(const IntegerMatrix& rows);

    std::size_t ambient_rank() const { return ambient_rank_; }
    std::size_t rank() const { return gens_.rows(); }
    const IntegerMatrix& generators() const { return gens_; }
    std::vector<Vec> generator_rows() const;

    bool operator==(const Sublattice& rhs) const {
        return ambient_rank_ == rhs.ambient_rank_ && gens_ == rhs.gens_;
    }
    bool operator!=(const Sublattice& rhs) const { return !(*this == rhs); }

private:
    std::size_t ambient_rank_;
    IntegerMatrix gens_; // HNF, no zero rows
};

// {x : A x = 0}; saturated by construction.
Sublattice kernel_basis(const IntegerMatrix& a);

// Exact intersection of subgroups (not of their saturations).
Sublattice intersect(const Sublattice& a, const Sublattice& b);

Sublattice lattice_sum(const Sublattice& a, const Sublattice& b);

// (L tensor Q) meet Z^n; smallest saturated overlattice.
Sublattice saturation(const Sublattice& l);

// Invariant-factor presentation of a finitely generated abelian group.
struct AbelianGroupStructure {
    std::size_t free_rank = 0;
    Vec torsion; // each > 1, each dividing the next

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    Int torsion_order() const;
    bool operator==(const AbelianGroupStructure& rhs) const {
        return free_rank == rhs.free_rank && torsion == rhs.torsion;
    }
    bool operator!=(const AbelianGroupStructure& rhs) const { return !(*this == rhs); }
    std::string to_string() const;
};

// sup / sub; throws validation_error naming the first generator of `sub`
// not contained in `sup`.
AbelianGroupStructure quotient_structure(const Sublattice& sub, const Sublattice& sup);

struct QuotientWithWitnesses {
    AbelianGroupStructure structure;
    // One ambient-coordinates representative per torsion factor, aligned
    // with structure.torsion.
    std::vector<Vec> torsion_witnesses;
};

QuotientWithWitnesses quotient_structure_with_witnesses(const Sublattice& sub,
                                                        const Sublattice& sup);

struct Membership {
    bool member = false;
    Vec coefficients;            // over HNF generators when member
    std::size_t failed_column = 0; // first pivot step that fails otherwise
    std::string reason;          // "nondivisible" or "outside-span"
};

Membership membership(const Vec& v, const Sublattice& l);

// Coefficients c with c^T * family = target, if target lies in the row
// span of `family` (which need not be in normal form).
std::optional<Vec> express_over_rows(const IntegerMatrix& family, const Vec& target);

// Reduce v modulo L: subtracts generator multiples so every pivot-column
// entry lands in [0, pivot). Canonical coset representative.
Vec reduce_mod(const Vec& v, const Sublattice& l);

} // namespace chowtori::lattice
