#include "chowtori/groups.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "chowtori/errors.hpp"

namespace chowtori::groups {

SignedPermutation::SignedPermutation(std::vector<int> img, std::vector<int> sgn)
    : image(std::move(img)), sign(std::move(sgn)) {
    if (image.size() != sign.size())
        throw validation_error("signed permutation: image and sign vectors differ in length");
    std::vector<char> seen(image.size(), 0);
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (image[i] < 0 || static_cast<std::size_t>(image[i]) >= image.size() || seen[image[i]])
            throw validation_error("signed permutation: image is not a bijection");
        seen[image[i]] = 1;
        if (sign[i] != 1 && sign[i] != -1)
            throw validation_error("signed permutation: signs must be +1 or -1");
    }
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
    SignedPermutation p;
    p.image.resize(n);
    p.sign.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) p.image[i] = static_cast<int>(i);
    return p;
}

bool SignedPermutation::is_identity() const {
    for (std::size_t i = 0; i < degree(); ++i)
        if (image[i] != static_cast<int>(i) || sign[i] != 1) return false;
    return true;
}

bool SignedPermutation::is_pure_permutation() const {
    for (int s : sign)
        if (s != 1) return false;
    return true;
}

SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h) {
    std::size_t n = g.degree();
    if (h.degree() != n) throw validation_error("compose: degree mismatch");
    SignedPermutation r;
    r.image.resize(n);
    r.sign.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.image[i] = g.image[h.image[i]];
        r.sign[i] = g.sign[h.image[i]] * h.sign[i];
    }
    return r;
}

SignedPermutation SignedPermutation::inverse() const {
    std::size_t n = degree();
    SignedPermutation r;
    r.image.resize(n);
    r.sign.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.image[image[i]] = static_cast<int>(i);
        r.sign[image[i]] = sign[i];
    }
    return r;
}

lattice::IntegerMatrix SignedPermutation::to_matrix() const {
    std::size_t n = degree();
    lattice::IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(image[i], i) = sign[i];
    return m;
}

std::string SignedPermutation::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < degree(); ++i)
        os << (i ? " " : "") << (sign[i] < 0 ? "-" : "") << image[i] + 1;
    os << "]";
    return os.str();
}

bool as_signed_permutation(const lattice::IntegerMatrix& m, SignedPermutation& out) {
    if (m.rows() != m.cols()) return false;
    std::size_t n = m.rows();
    std::vector<int> image(n), sign(n);
    std::vector<char> hit(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        int nz = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (m.at(i, j) == 0) continue;
            if (nz >= 0) return false;
            if (m.at(i, j) != 1 && m.at(i, j) != -1) return false;
            nz = static_cast<int>(i);
        }
        if (nz < 0 || hit[nz]) return false;
        hit[nz] = 1;
        image[j] = nz;
        sign[j] = m.at(nz, j) == 1 ? 1 : -1;
    }
    out = SignedPermutation(std::move(image), std::move(sign));
    return true;
}

FiniteActionGroup FiniteActionGroup::trivial(std::size_t degree) {
    return close({SignedPermutation::identity(degree)}, 1);
}

FiniteActionGroup FiniteActionGroup::close(const std::vector<SignedPermutation>& generators,
                                           long bound) {
    FiniteActionGroup g;
    if (generators.empty()) throw validation_error("close_group: at least one generator (or an identity) is required");
    g.degree_ = generators[0].degree();
    for (const auto& s : generators)
        if (s.degree() != g.degree_)
            throw validation_error("close_group: generators have mixed degrees");

    std::map<SignedPermutation, int> index;
    g.elements_.push_back(SignedPermutation::identity(g.degree_));
    index[g.elements_[0]] = 0;
    g.parent_gen_.push_back(-1);
    g.parent_elem_.push_back(-1);

    std::vector<int> gen_idx;
    for (std::size_t qi = 0; qi < g.elements_.size(); ++qi) {
        for (std::size_t s = 0; s < generators.size(); ++s) {
            SignedPermutation next = compose(generators[s], g.elements_[qi]);
            auto it = index.find(next);
            if (it == index.end()) {
                if (static_cast<long>(g.elements_.size()) >= bound)
                    throw resource_error("group too large: closure exceeds the configured order bound " +
                                             std::to_string(bound),
                                         bound);
                int id = static_cast<int>(g.elements_.size());
                index.emplace(next, id);
                g.elements_.push_back(std::move(next));
                g.parent_gen_.push_back(static_cast<int>(s));
                g.parent_elem_.push_back(static_cast<int>(qi));
            }
        }
    }
    for (const auto& s : generators) gen_idx.push_back(index.at(s));
    g.generator_indices_ = std::move(gen_idx);
    g.build_tables();
    // parent_gen_ stores the generator's element index, for table use
    for (std::size_t i = 1; i < g.elements_.size(); ++i)
        g.parent_gen_[i] = g.generator_indices_[g.parent_gen_[i]];
    return g;
}

void FiniteActionGroup::build_tables() {
    std::size_t n = elements_.size();
    std::map<SignedPermutation, int> index;
    for (std::size_t i = 0; i < n; ++i) index[elements_[i]] = static_cast<int>(i);
    table_.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto it = index.find(compose(elements_[i], elements_[j]));
            if (it == index.end()) throw invariant_error("group closure is not closed");
            table_[i * n + j] = it->second;
        }
    inverse_.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (table_[i * n + j] == 0) {
                inverse_[i] = static_cast<int>(j);
                break;
            }
}

int FiniteActionGroup::index_of(const SignedPermutation& p) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i] == p) return static_cast<int>(i);
    return -1;
}

SubgroupHandle full_subgroup(const FiniteActionGroup& g) {
    SubgroupHandle h;
    h.members.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h.members[i] = static_cast<int>(i);
    return h;
}

SubgroupHandle trivial_subgroup() { return SubgroupHandle{{0}}; }

SubgroupHandle subgroup_closure(const FiniteActionGroup& g, const std::vector<int>& seed) {
    std::vector<char> in(g.size(), 0);
    std::vector<int> work;
    in[0] = 1;
    work.push_back(0);
    std::vector<int> gens = seed;
    for (std::size_t qi = 0; qi < work.size(); ++qi)
        for (int s : gens) {
            int nxt = g.compose_idx(work[qi], s);
            if (!in[nxt]) {
                in[nxt] = 1;
                work.push_back(nxt);
            }
        }
    SubgroupHandle h;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (in[i]) h.members.push_back(static_cast<int>(i));
    return h;
}

bool is_closed_subgroup(const FiniteActionGroup& g, const SubgroupHandle& h) {
    std::vector<char> in(g.size(), 0);
    for (int m : h.members) in[m] = 1;
    if (!in[0]) return false;
    for (int a : h.members)
        for (int b : h.members)
            if (!in[g.compose_idx(a, b)]) return false;
    return true;
}

std::vector<SubgroupHandle> all_subgroups(const FiniteActionGroup& g) {
    std::set<std::vector<int>> found;
    found.insert({0});
    for (std::size_t i = 0; i < g.size(); ++i)
        found.insert(subgroup_closure(g, {static_cast<int>(i)}).members);

    // join cyclic subgroups until a fixed point
    bool grew = true;
    std::set<std::pair<std::vector<int>, std::vector<int>>> joined;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> snapshot(found.begin(), found.end());
        for (std::size_t a = 0; a < snapshot.size(); ++a)
            for (std::size_t b = a + 1; b < snapshot.size(); ++b) {
                if (std::includes(snapshot[a].begin(), snapshot[a].end(), snapshot[b].begin(),
                                  snapshot[b].end()) ||
                    std::includes(snapshot[b].begin(), snapshot[b].end(), snapshot[a].begin(),
                                  snapshot[a].end()))
                    continue;
                auto key = std::make_pair(snapshot[a], snapshot[b]);
                if (!joined.insert(key).second) continue;
                std::vector<int> seed = snapshot[a];
                seed.insert(seed.end(), snapshot[b].begin(), snapshot[b].end());
                auto join = subgroup_closure(g, seed).members;
                if (found.insert(join).second) grew = true;
            }
    }
    std::vector<SubgroupHandle> out;
    out.reserve(found.size());
    for (const auto& m : found) out.push_back(SubgroupHandle{m});
    std::sort(out.begin(), out.end());
    return out;
}

SubgroupHandle conjugate_subgroup(const FiniteActionGroup& g, const SubgroupHandle& h, int by) {
    SubgroupHandle c;
    c.members.reserve(h.members.size());
    int inv = g.inverse_idx(by);
    for (int m : h.members) c.members.push_back(g.compose_idx(g.compose_idx(by, m), inv));
    std::sort(c.members.begin(), c.members.end());
    return c;
}

std::vector<SubgroupHandle> all_subgroups_up_to_conjugacy(const FiniteActionGroup& g) {
    std::vector<SubgroupHandle> all = all_subgroups(g);
    std::set<std::vector<int>> seen;
    std::vector<SubgroupHandle> reps;
    for (const auto& h : all) {
        if (seen.count(h.members)) continue;
        // canonical form: least member set over the conjugacy class
        std::vector<int> least = h.members;
        std::vector<std::vector<int>> orbit;
        for (std::size_t by = 0; by < g.size(); ++by) {
            auto c = conjugate_subgroup(g, h, static_cast<int>(by)).members;
            if (c < least) least = c;
            orbit.push_back(std::move(c));
        }
        for (auto& c : orbit) seen.insert(std::move(c));
        reps.push_back(SubgroupHandle{least});
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

std::vector<int> coset_representatives(const FiniteActionGroup& g, const SubgroupHandle& h) {
    std::vector<char> seen(g.size(), 0);
    std::vector<int> reps;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (seen[i]) continue;
        reps.push_back(static_cast<int>(i));
        for (int m : h.members) seen[g.compose_idx(static_cast<int>(i), m)] = 1;
    }
    return reps;
}

std::vector<int> subgroup_generators(const FiniteActionGroup& g, const SubgroupHandle& h) {
    std::vector<int> gens;
    std::vector<char> closed(g.size(), 0);
    closed[0] = 1;
    std::size_t closed_count = 1;
    for (int m : h.members) {
        if (closed[m]) continue;
        gens.push_back(m);
        auto c = subgroup_closure(g, gens);
        closed.assign(g.size(), 0);
        closed_count = c.members.size();
        for (int x : c.members) closed[x] = 1;
        if (closed_count == h.members.size()) break;
    }
    return gens;
}

MatrixAction matrix_action_from_signed(const FiniteActionGroup& g) {
    MatrixAction a;
    a.group = &g;
    a.images.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) a.images.push_back(g.element(i).to_matrix());
    return a;
}

MatrixAction restrict_action_to_sublattice(const FiniteActionGroup& g,
                                           const lattice::Sublattice& l) {
    return restrict_action_to_sublattice(matrix_action_from_signed(g), l);
}

MatrixAction restrict_action_to_sublattice(const MatrixAction& ambient,
                                           const lattice::Sublattice& l) {
    const FiniteActionGroup& g = *ambient.group;
    std::size_t k = l.rank();
    MatrixAction r;
    r.group = &g;
    r.images.reserve(g.size());
    for (std::size_t e = 0; e < g.size(); ++e) {
        lattice::IntegerMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            Vec img = ambient.images[e].apply(l.generators().row(i));
            lattice::Membership mem = lattice::membership(img, l);
            if (!mem.member)
                throw validation_error("sublattice is not stable: element " + std::to_string(e) +
                                       " (" + g.element(e).to_string() +
                                       ") moves generator " + std::to_string(i) +
                                       " outside the lattice");
            for (std::size_t j = 0; j < k; ++j) m.at(j, i) = mem.coefficients[j];
        }
        r.images.push_back(std::move(m));
    }
    // spot-check the composition law on the generators
    for (int s : g.generator_indices())
        for (int t : g.generator_indices()) {
            int st = g.compose_idx(s, t);
            if (r.images[st] != r.images[s] * r.images[t])
                throw invariant_error("restricted action violates the composition law");
        }
    return r;
}

QuotientData quotient_action(const FiniteActionGroup& g, const lattice::Sublattice& phat) {
    std::size_t n = g.degree();
    if (phat.ambient_rank() != n)
        throw validation_error("quotient_action: lattice ambient rank differs from group degree");
    // stability check first (names the offending element)
    restrict_action_to_sublattice(g, phat);

    std::size_t r = phat.rank();
    // columns of E are the generators of phat
    lattice::IntegerMatrix e = phat.generators().transpose();
    lattice::SmithDecomposition s = lattice::smith_normal_form(e);
    for (const Int& f : s.invariant_factors())
        if (f != 1)
            throw validation_error("not a torus quotient: the embedding has invariant factor " +
                                   f.str());
    if (s.rank() != r) throw invariant_error("quotient_action: rank drop in smith form");

    QuotientData q;
    q.projection = lattice::IntegerMatrix(n - r, n);
    for (std::size_t i = 0; i < n - r; ++i)
        for (std::size_t j = 0; j < n; ++j) q.projection.at(i, j) = s.u.at(r + i, j);
    lattice::IntegerMatrix uinv = lattice::inverse_unimodular(s.u);
    q.section = lattice::IntegerMatrix(n, n - r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n - r; ++j) q.section.at(i, j) = uinv.at(i, r + j);

    q.action.group = &g;
    q.action.images.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        lattice::IntegerMatrix m = q.projection * g.element(i).to_matrix() * q.section;
        q.action.images.push_back(std::move(m));
    }
    // the action must commute with the projection
    for (std::size_t i = 0; i < g.size(); ++i)
        if (q.action.images[i] * q.projection != q.projection * g.element(i).to_matrix())
            throw invariant_error("quotient action does not commute with the projection");
    return q;
}

} // namespace chowtori::groups
