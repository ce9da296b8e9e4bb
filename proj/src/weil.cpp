#include "chowtori/weil.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "chowtori/errors.hpp"

namespace chowtori::weil {

GammaSet::GammaSet(groups::FiniteActionGroup g) : group(std::move(g)) {
    for (std::size_t i = 0; i < group.size(); ++i)
        if (!group.element(i).is_pure_permutation())
            throw validation_error("a Gamma-set needs a pure permutation action (element " +
                                   std::to_string(i) + " carries signs)");
    if (group.degree() > kMaxPoints)
        throw resource_error("Gamma-set on " + std::to_string(group.degree()) +
                                 " points exceeds the supported maximum",
                             kMaxPoints);
}

namespace {

std::vector<int> apply_subset(const groups::SignedPermutation& g, const std::vector<int>& s) {
    std::vector<int> r;
    r.reserve(s.size());
    for (int x : s) r.push_back(g.image[x]);
    std::sort(r.begin(), r.end());
    return r;
}

groups::SubgroupHandle setwise_stabilizer(const groups::FiniteActionGroup& g,
                                          const std::vector<int>& s) {
    groups::SubgroupHandle h;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (apply_subset(g.element(i), s) == s) h.members.push_back(static_cast<int>(i));
    return h;
}

// Orbits of a subgroup on a sorted point list, ordered by least point.
std::vector<std::vector<int>> orbits_on(const groups::FiniteActionGroup& g,
                                        const groups::SubgroupHandle& h,
                                        const std::vector<int>& pts) {
    std::set<int> remaining(pts.begin(), pts.end());
    std::vector<std::vector<int>> out;
    while (!remaining.empty()) {
        int seed = *remaining.begin();
        std::set<int> orbit{seed};
        std::vector<int> work{seed};
        while (!work.empty()) {
            int x = work.back();
            work.pop_back();
            for (int m : h.members) {
                int y = g.element(m).image[x];
                if (orbit.insert(y).second) work.push_back(y);
            }
        }
        std::vector<int> o(orbit.begin(), orbit.end());
        for (int x : o) remaining.erase(x);
        out.push_back(std::move(o));
    }
    return out;
}

groups::SubgroupHandle point_stabilizer(const groups::FiniteActionGroup& g,
                                        const groups::SubgroupHandle& within, int pt) {
    groups::SubgroupHandle h;
    for (int m : within.members)
        if (g.element(m).image[pt] == pt) h.members.push_back(m);
    return h;
}

// Canonical form of a subgroup of H up to conjugacy inside H. H's members
// index into the parent group g.
std::vector<int> conjugacy_canonical(const groups::FiniteActionGroup& g,
                                     const groups::SubgroupHandle& h,
                                     const std::vector<int>& members) {
    std::vector<int> best = members;
    for (int by : h.members) {
        std::vector<int> c;
        c.reserve(members.size());
        int inv = g.inverse_idx(by);
        for (int m : members) c.push_back(g.compose_idx(g.compose_idx(by, m), inv));
        std::sort(c.begin(), c.end());
        if (c < best) best = c;
    }
    return best;
}

void next_subset(std::vector<int>& s, int n, bool& done) {
    // next p-subset of {0..n-1} in lexicographic order
    int p = static_cast<int>(s.size());
    int i = p - 1;
    while (i >= 0 && s[i] == n - p + i) --i;
    if (i < 0) {
        done = true;
        return;
    }
    ++s[i];
    for (int j = i + 1; j < p; ++j) s[j] = s[j - 1] + 1;
}

} // namespace

std::vector<StratumDescriptor> strata(const GammaSet& gs, int p) {
    int n = static_cast<int>(gs.points());
    if (p < 0 || p > n) throw validation_error("strata: subset size out of range");
    const groups::FiniteActionGroup& g = gs.group;

    std::set<std::vector<int>> visited;
    std::vector<StratumDescriptor> out;

    std::vector<int> s(p);
    for (int i = 0; i < p; ++i) s[i] = i;
    bool done = (p == 0);
    bool emitted_empty = false;
    for (;;) {
        if (p == 0) {
            if (emitted_empty) break;
            emitted_empty = true;
            s.clear();
        }
        if (!visited.count(s)) {
            StratumDescriptor d;
            d.subset = s;
            std::set<std::vector<int>> orbit;
            for (std::size_t i = 0; i < g.size(); ++i) orbit.insert(apply_subset(g.element(i), s));
            for (const auto& o : orbit) visited.insert(o);
            d.orbit_size = orbit.size();
            d.stabilizer = setwise_stabilizer(g, s);
            if (d.orbit_size * d.stabilizer.size() != g.size())
                throw invariant_error("orbit-stabilizer mismatch in strata");
            for (const auto& block : orbits_on(g, d.stabilizer, s)) {
                OrbitBlock b;
                b.points = block;
                b.stabilizer = point_stabilizer(g, d.stabilizer, block.front());
                d.blocks.push_back(std::move(b));
            }
            out.push_back(std::move(d));
        }
        if (p == 0) break;
        next_subset(s, n, done);
        if (done) break;
    }
    return out;
}

Lemma12Report lemma12_check(const GammaSet& gs, const std::vector<int>& subset) {
    int n = static_cast<int>(gs.points());
    const groups::FiniteActionGroup& g = gs.group;
    std::vector<int> j = subset;
    std::sort(j.begin(), j.end());
    for (int x : j)
        if (x < 0 || x >= n) throw validation_error("lemma12_check: point out of range");

    std::vector<int> jc;
    for (int x = 0; x < n; ++x)
        if (!std::binary_search(j.begin(), j.end(), x)) jc.push_back(x);

    groups::SubgroupHandle sj = setwise_stabilizer(g, j);
    groups::SubgroupHandle sjc = setwise_stabilizer(g, jc);
    Lemma12Report rep;
    if (!(sj == sjc)) {
        rep.detail = "stabilizers of the subset and its complement differ";
        return rep;
    }

    // left side: blocks of J and of its complement under the joint stabilizer
    std::vector<std::vector<int>> left = orbits_on(g, sj, j);
    for (auto& b : orbits_on(g, sj, jc)) left.push_back(std::move(b));
    // right side: all stabilizer-orbits of the ground set
    std::vector<int> all(n);
    for (int x = 0; x < n; ++x) all[x] = x;
    std::vector<std::vector<int>> right = orbits_on(g, sj, all);

    // match transitive pieces by (size, point-stabilizer class)
    using Key = std::pair<std::size_t, std::vector<int>>;
    auto key_of = [&](const std::vector<int>& piece) {
        groups::SubgroupHandle st = point_stabilizer(g, sj, piece.front());
        return Key{piece.size(), conjugacy_canonical(g, sj, st.members)};
    };
    std::map<Key, std::vector<std::vector<int>>> pool;
    for (const auto& r : right) pool[key_of(r)].push_back(r);
    for (const auto& l : left) {
        Key k = key_of(l);
        auto it = pool.find(k);
        if (it == pool.end() || it->second.empty()) {
            std::ostringstream os;
            os << "no matching orbit for the block {";
            for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
            os << "}";
            rep.detail = os.str();
            return rep;
        }
        rep.matching.push_back(BlockMatch{l, it->second.back()});
        it->second.pop_back();
    }
    for (const auto& [k, v] : pool)
        if (!v.empty()) {
            rep.detail = "unmatched orbit remains on the right side";
            return rep;
        }
    rep.pass = true;
    return rep;
}

} // namespace chowtori::weil
