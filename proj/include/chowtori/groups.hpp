#pragma once

#include <cstddef>
#include <vector>

#include "chowtori/lattice.hpp"
#include "chowtori/signed_permutation.hpp"

namespace chowtori::groups {

inline constexpr long kDefaultGroupOrderBound = 256;

// Finite group of signed permutations of one degree, stored as a full
// element list. Element 0 is the identity; the ordering is the
// breadth-first closure from the identity with the generator order fixed,
// so it is reproducible.
class FiniteActionGroup {
public:
    static FiniteActionGroup close(const std::vector<SignedPermutation>& generators,
                                   long bound = kDefaultGroupOrderBound);
    static FiniteActionGroup trivial(std::size_t degree);

    std::size_t degree() const { return degree_; }
    std::size_t size() const { return elements_.size(); }
    const SignedPermutation& element(std::size_t i) const { return elements_[i]; }
    const std::vector<SignedPermutation>& elements() const { return elements_; }
    const std::vector<int>& generator_indices() const { return generator_indices_; }

    int compose_idx(int g, int h) const { return table_[static_cast<std::size_t>(g) * size() + h]; }
    int inverse_idx(int g) const { return inverse_[g]; }
    int index_of(const SignedPermutation& p) const; // -1 when absent

    // BFS tree: element i != 0 equals element(parent_gen(i)) * element(parent_elem(i)).
    int parent_gen(int i) const { return parent_gen_[i]; }
    int parent_elem(int i) const { return parent_elem_[i]; }

private:
    std::size_t degree_ = 0;
    std::vector<SignedPermutation> elements_;
    std::vector<int> generator_indices_;
    std::vector<int> inverse_;
    std::vector<int> table_;
    std::vector<int> parent_gen_, parent_elem_;

    void build_tables();
};

// Sorted element indices into a parent group; closed under composition
// and inverse. The parent is passed alongside wherever needed.
struct SubgroupHandle {
    std::vector<int> members;

    std::size_t size() const { return members.size(); }
    bool operator==(const SubgroupHandle& rhs) const { return members == rhs.members; }
    bool operator<(const SubgroupHandle& rhs) const {
        if (members.size() != rhs.members.size()) return members.size() < rhs.members.size();
        return members < rhs.members;
    }
};

SubgroupHandle full_subgroup(const FiniteActionGroup& g);
SubgroupHandle trivial_subgroup();
SubgroupHandle subgroup_closure(const FiniteActionGroup& g, const std::vector<int>& seed);
bool is_closed_subgroup(const FiniteActionGroup& g, const SubgroupHandle& h);

// Every subgroup, by joining cyclic subgroups to a fixed point.
std::vector<SubgroupHandle> all_subgroups(const FiniteActionGroup& g);
// One representative per conjugacy class (the lexicographically least
// member set in its class), ordered by size then member set.
std::vector<SubgroupHandle> all_subgroups_up_to_conjugacy(const FiniteActionGroup& g);

SubgroupHandle conjugate_subgroup(const FiniteActionGroup& g, const SubgroupHandle& h, int by);

// Minimal element index of each left coset gH, ascending. The identity
// coset comes first.
std::vector<int> coset_representatives(const FiniteActionGroup& g, const SubgroupHandle& h);

// Small generating set of a subgroup (greedy over ascending indices).
std::vector<int> subgroup_generators(const FiniteActionGroup& g, const SubgroupHandle& h);

// A group acting by integer matrices of a fixed rank, one image per
// element of the underlying group.
struct MatrixAction {
    const FiniteActionGroup* group = nullptr;
    std::vector<lattice::IntegerMatrix> images;

    std::size_t rank() const { return images.empty() ? 0 : images[0].rows(); }
    const lattice::IntegerMatrix& image(std::size_t i) const { return images[i]; }
};

MatrixAction matrix_action_from_signed(const FiniteActionGroup& g);

// Action expressed in the HNF basis of a stable sublattice. Throws
// validation_error naming the first group element that moves L off itself.
MatrixAction restrict_action_to_sublattice(const FiniteActionGroup& g,
                                           const lattice::Sublattice& l);
MatrixAction restrict_action_to_sublattice(const MatrixAction& ambient,
                                           const lattice::Sublattice& l);

// Data of the quotient Z^N -> Z^N / P for a stable P with torsion-free
// quotient: projection (rows), a section (columns), and the induced action.
struct QuotientData {
    lattice::IntegerMatrix projection; // (N-r) x N
    lattice::IntegerMatrix section;    // N x (N-r), projection * section = I
    MatrixAction action;               // on Z^{N-r}
};

QuotientData quotient_action(const FiniteActionGroup& g, const lattice::Sublattice& phat);

} // namespace chowtori::groups
