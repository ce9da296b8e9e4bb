#pragma once

#include <string>
#include <vector>

#include "chowtori/groups.hpp"

namespace chowtori::weil {

inline constexpr int kMaxPoints = 16;

// A finite group of plain permutations acting on {0..N-1}. Fields only
// ever appear through the Galois correspondence, as subgroups.
struct GammaSet {
    groups::FiniteActionGroup group;

    explicit GammaSet(groups::FiniteActionGroup g);
    std::size_t points() const { return group.degree(); }
};

struct OrbitBlock {
    std::vector<int> points;            // sorted
    groups::SubgroupHandle stabilizer;  // point stabilizer of the least point
};

// One orbit of p-subsets: the lexicographically least subset in the
// orbit, its setwise stabilizer, and the stabilizer's orbits within it.
struct StratumDescriptor {
    std::vector<int> subset; // sorted representative J
    std::size_t orbit_size = 0;
    groups::SubgroupHandle stabilizer; // setwise
    std::vector<OrbitBlock> blocks;    // partition of J, ordered by least point
};

std::vector<StratumDescriptor> strata(const GammaSet& gs, int p);

struct BlockMatch {
    std::vector<int> piece;  // a block of J or of its complement
    std::vector<int> orbit;  // the matched stabilizer-orbit of {0..N-1}
};

struct Lemma12Report {
    bool pass = false;
    std::vector<BlockMatch> matching;
    std::string detail;
};

// Compares, as stabilizer-sets, the disjoint union of the block
// decompositions of J and its complement with the restriction of the full
// point set. Transitive pieces are matched by size and point-stabilizer
// conjugacy class.
Lemma12Report lemma12_check(const GammaSet& gs, const std::vector<int>& subset);

} // namespace chowtori::weil
