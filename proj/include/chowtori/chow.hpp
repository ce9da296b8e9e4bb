#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "chowtori/groups.hpp"
#include "chowtori/lattice.hpp"
#include "chowtori/symalg.hpp"

namespace chowtori::chow {

struct Options {
    long max_group_order = groups::kDefaultGroupOrderBound;
    int max_degree = symalg::kDefaultDegreeCap;
};

// A validated resolution: the group acts on Z^N by signed permutations,
// the embedded rank-r sublattice is stable, and the quotient is free.
struct ResolutionProblem {
    std::shared_ptr<const groups::FiniteActionGroup> group;
    lattice::IntegerMatrix embedding; // N x r as supplied
    Options options;

    // derived
    lattice::Sublattice phat;               // HNF basis of the embedded image
    lattice::IntegerMatrix phat_matrix;     // N x r, HNF basis as columns
    groups::MatrixAction phat_action;       // in the HNF basis
    groups::QuotientData quotient;          // projection, section, action on T

    std::size_t ambient_rank() const { return group->degree(); }
    std::size_t phat_rank() const { return phat.rank(); }
    std::size_t quotient_rank() const { return ambient_rank() - phat_rank(); }

    symalg::ResolutionData resolution_data() const {
        return symalg::ResolutionData{group.get(), phat_matrix, phat_action};
    }
};

// Checks every structural invariant; optionally verifies a user-supplied
// action on the embedded lattice against the derived restriction.
ResolutionProblem validate(std::shared_ptr<const groups::FiniteActionGroup> group,
                           lattice::IntegerMatrix embedding, Options options = {},
                           const std::vector<lattice::IntegerMatrix>* supplied_phat_action = nullptr);

struct IdealOptions {
    bool exhaustive_subgroups = false; // every subgroup instead of class representatives
    symalg::InvariantsMethod invariants = symalg::InvariantsMethod::Auto;
};

// The degree-d ideal with its raw induced generating family kept for
// membership certificates.
struct IdealData {
    lattice::Sublattice lattice;
    struct RawGenerator {
        Vec vector;
        std::size_t subgroup_class;
        std::size_t e, p_index, q_index;
    };
    std::vector<RawGenerator> family;
    std::vector<groups::SubgroupHandle> subgroups; // class reps (or all, if exhaustive)
};

IdealData ideal_data(const ResolutionProblem& p, int d, const IdealOptions& opts = {});
lattice::Sublattice ideal_I(const ResolutionProblem& p, int d, const IdealOptions& opts = {});

lattice::AbelianGroupStructure chow_group(const ResolutionProblem& p, int d);

// A torsion class of ker(phi)_d: a representative, its order, the failing
// pivot step showing the representative itself is not in the ideal, and a
// decomposition of order * witness over the raw induced family.
struct Witness {
    Vec vector;
    Int order;
    lattice::Membership non_membership; // of `vector` in I_d
    std::vector<std::pair<Int, std::size_t>> decomposition; // (coeff, family index)
    std::optional<std::size_t> decomposition_class;         // single class when possible
};

struct KernelResult {
    lattice::AbelianGroupStructure structure;
    std::vector<Witness> witnesses;
};

KernelResult base_change_kernel(const ResolutionProblem& p, int d,
                                const IdealOptions& opts = {});

lattice::AbelianGroupStructure base_change_cokernel(const ResolutionProblem& p, int d,
                                                    const IdealOptions& opts = {});

// H^1 of the module carried by a matrix action, by inhomogeneous
// cochains. Cocycles are pinned down by their values on the group's
// generators; the consistency constraints over all (generator, element)
// pairs cut out exactly Z^1.
lattice::AbelianGroupStructure h1(const groups::MatrixAction& action);

// H^1(Gamma, J_d) for the resolution's ideal piece.
lattice::AbelianGroupStructure h1_of_ideal(const ResolutionProblem& p, int d);

struct DegreeReport {
    int degree = 0;
    lattice::AbelianGroupStructure chow;
    lattice::AbelianGroupStructure kernel;
    lattice::AbelianGroupStructure cokernel;
    std::optional<lattice::AbelianGroupStructure> h1_check;
    std::vector<Witness> witnesses;
};

// Aggregates all degree-d outputs; when with_h1 is set, computes
// H^1(Gamma, J_d) and requires it to agree with the cokernel (a mismatch
// raises invariant_error carrying both values).
DegreeReport degree_report(const ResolutionProblem& p, int d, bool with_h1,
                           const IdealOptions& opts = {});

} // namespace chowtori::chow
