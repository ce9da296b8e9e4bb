#include "chowtori/chow.hpp"

#include <algorithm>

#include "chowtori/errors.hpp"

namespace chowtori::chow {

using lattice::AbelianGroupStructure;
using lattice::IntegerMatrix;
using lattice::Sublattice;

ResolutionProblem validate(std::shared_ptr<const groups::FiniteActionGroup> group,
                           IntegerMatrix embedding, Options options,
                           const std::vector<IntegerMatrix>* supplied_phat_action) {
    if (!group) throw validation_error("validate: missing group");
    ResolutionProblem p;
    p.group = std::move(group);
    p.options = options;
    std::size_t n = p.group->degree();
    if (static_cast<long>(p.group->size()) > options.max_group_order)
        throw resource_error("group order " + std::to_string(p.group->size()) +
                                 " exceeds the configured bound",
                             options.max_group_order);
    if (embedding.rows() != n)
        throw validation_error("embedding has " + std::to_string(embedding.rows()) +
                               " rows, the group acts on rank " + std::to_string(n));
    p.embedding = std::move(embedding);

    std::size_t r = p.embedding.cols();
    {
        lattice::SmithDecomposition s = lattice::smith_normal_form(p.embedding);
        if (s.rank() != r)
            throw validation_error("embedding is rank deficient: rank " +
                                   std::to_string(s.rank()) + " of " + std::to_string(r) +
                                   " columns");
        for (const Int& f : s.invariant_factors())
            if (f != 1)
                throw validation_error("not a torus quotient: embedding has invariant factor " +
                                       f.str());
    }

    std::vector<Vec> cols;
    for (std::size_t j = 0; j < r; ++j) cols.push_back(p.embedding.col(j));
    p.phat = Sublattice::from_generators(n, cols);
    p.phat_matrix = p.phat.generators().transpose();
    // also checks stability; names the offending element on failure
    p.phat_action = groups::restrict_action_to_sublattice(*p.group, p.phat);
    p.quotient = groups::quotient_action(*p.group, p.phat);

    if (supplied_phat_action) {
        if (supplied_phat_action->size() != p.group->size())
            throw validation_error("supplied P-action has " +
                                   std::to_string(supplied_phat_action->size()) +
                                   " images, the group has order " +
                                   std::to_string(p.group->size()));
        for (std::size_t i = 0; i < p.group->size(); ++i)
            if ((*supplied_phat_action)[i] != p.phat_action.images[i])
                throw validation_error(
                    "supplied P-action disagrees with the derived restriction at element " +
                    std::to_string(i) + " (" + p.group->element(i).to_string() + ")");
    }
    return p;
}

IdealData ideal_data(const ResolutionProblem& p, int d, const IdealOptions& opts) {
    symalg::check_degree_cap(d, p.options.max_degree);
    if (d < 1) throw validation_error("ideal is computed in positive degrees");
    IdealData data;
    data.subgroups = opts.exhaustive_subgroups ? groups::all_subgroups(*p.group)
                                               : groups::all_subgroups_up_to_conjugacy(*p.group);
    symalg::ResolutionData rd = p.resolution_data();
    std::size_t dim = symalg::monomial_basis(static_cast<int>(p.ambient_rank()), d).size();
    std::vector<Vec> vectors;
    for (std::size_t ci = 0; ci < data.subgroups.size(); ++ci) {
        auto family = symalg::induced_generator_family(rd, data.subgroups[ci], d, opts.invariants);
        for (auto& ig : family) {
            vectors.push_back(ig.vector);
            data.family.push_back(
                IdealData::RawGenerator{std::move(ig.vector), ci, ig.e, ig.p_index, ig.q_index});
        }
    }
    data.lattice = Sublattice::from_generators(dim, vectors);
    return data;
}

Sublattice ideal_I(const ResolutionProblem& p, int d, const IdealOptions& opts) {
    return ideal_data(p, d, opts).lattice;
}

namespace {

Sublattice full_invariants(const ResolutionProblem& p, int d,
                           symalg::InvariantsMethod method = symalg::InvariantsMethod::Auto) {
    symalg::SymmetricAction act = symalg::symmetric_power_action(*p.group, d);
    return symalg::invariants(act, groups::full_subgroup(*p.group), method);
}

// Requires every generator of sub to lie in sup; raised as an internal
// inconsistency, not an input error.
void require_contained(const Sublattice& sub, const Sublattice& sup, const char* what) {
    for (std::size_t i = 0; i < sub.rank(); ++i)
        if (!lattice::membership(sub.generators().row(i), sup).member)
            throw invariant_error(std::string("internal inconsistency: ") + what);
}

void require_finite(const AbelianGroupStructure& g, const char* what) {
    if (g.free_rank != 0)
        throw invariant_error(std::string(what) +
                              " has nonzero free rank; the base change must be a rational "
                              "isomorphism (got " +
                              g.to_string() + ")");
}

// Prefer a witness that is a plain orbit sum of monomials; otherwise a
// reduced canonical representative. The replacement is verified to lie in
// the same coset of the ideal.
Vec beautify_witness(const Vec& v, const Sublattice& ideal, const Sublattice& sup,
                     const symalg::SymmetricAction& act,
                     const groups::SubgroupHandle& full) {
    Sublattice inv = symalg::invariants(act, full);
    for (std::size_t i = 0; i < inv.rank(); ++i) {
        Vec cand = inv.generators().row(i);
        if (!lattice::membership(cand, sup).member) continue;
        if (lattice::membership(cand, ideal).member) continue;
        if (lattice::membership(vec_sub(v, cand), ideal).member) return cand;
    }
    return lattice::reduce_mod(v, ideal);
}

} // namespace

AbelianGroupStructure chow_group(const ResolutionProblem& p, int d) {
    if (d < 0) throw validation_error("chow_group: negative degree");
    if (d == 0) return AbelianGroupStructure{1, {}};
    symalg::check_degree_cap(d, p.options.max_degree);
    Sublattice inv = full_invariants(p, d);
    Sublattice ideal = ideal_I(p, d);
    require_contained(ideal, inv, "I_d is not contained in the invariants of S(Q)_d");
    return lattice::quotient_structure(ideal, inv);
}

KernelResult base_change_kernel(const ResolutionProblem& p, int d, const IdealOptions& opts) {
    if (d < 1) throw validation_error("base_change_kernel: degree must be at least 1");
    symalg::check_degree_cap(d, p.options.max_degree);
    IdealData ideal = ideal_data(p, d, opts);
    Sublattice j = symalg::ideal_piece(p.phat_matrix, d);
    Sublattice inv = full_invariants(p, d, opts.invariants);
    Sublattice jg = lattice::intersect(j, inv);
    require_contained(ideal.lattice, jg, "I_d is not contained in J_d^Gamma");

    lattice::QuotientWithWitnesses q = lattice::quotient_structure_with_witnesses(ideal.lattice, jg);
    require_finite(q.structure, "ker(phi)_d");

    KernelResult result;
    result.structure = q.structure;
    symalg::SymmetricAction act = symalg::symmetric_power_action(*p.group, d);
    groups::SubgroupHandle full = groups::full_subgroup(*p.group);

    IntegerMatrix family_rows(ideal.family.size(), jg.ambient_rank());
    for (std::size_t i = 0; i < ideal.family.size(); ++i)
        family_rows.set_row(i, ideal.family[i].vector);

    for (std::size_t t = 0; t < q.structure.torsion.size(); ++t) {
        Witness w;
        w.order = q.structure.torsion[t];
        w.vector = beautify_witness(q.torsion_witnesses[t], ideal.lattice, jg, act, full);
        w.non_membership = lattice::membership(w.vector, ideal.lattice);
        if (w.non_membership.member)
            throw invariant_error("torsion witness lies in the ideal");
        Vec multiple = scaled(w.vector, w.order);
        // try to certify over a single subgroup class, largest first
        bool done = false;
        for (std::size_t ci = ideal.subgroups.size(); ci-- > 0 && !done;) {
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < ideal.family.size(); ++i)
                if (ideal.family[i].subgroup_class == ci) rows.push_back(i);
            if (rows.empty()) continue;
            IntegerMatrix sub(rows.size(), jg.ambient_rank());
            for (std::size_t i = 0; i < rows.size(); ++i)
                sub.set_row(i, ideal.family[rows[i]].vector);
            if (auto c = lattice::express_over_rows(sub, multiple)) {
                for (std::size_t i = 0; i < rows.size(); ++i)
                    if ((*c)[i] != 0) w.decomposition.emplace_back((*c)[i], rows[i]);
                w.decomposition_class = ci;
                done = true;
            }
        }
        if (!done) {
            auto c = lattice::express_over_rows(family_rows, multiple);
            if (!c) throw invariant_error("order * witness is not in the ideal");
            for (std::size_t i = 0; i < c->size(); ++i)
                if ((*c)[i] != 0) w.decomposition.emplace_back((*c)[i], i);
        }
        result.witnesses.push_back(std::move(w));
    }
    return result;
}

AbelianGroupStructure base_change_cokernel(const ResolutionProblem& p, int d,
                                           const IdealOptions& opts) {
    if (d < 1) throw validation_error("base_change_cokernel: degree must be at least 1");
    symalg::check_degree_cap(d, p.options.max_degree);
    groups::SubgroupHandle full = groups::full_subgroup(*p.group);

    symalg::SymmetricAction act_t = symalg::symmetric_power_action(p.quotient.action, d);
    Sublattice inv_t = symalg::invariants(act_t, full, opts.invariants);
    Sublattice inv_q = full_invariants(p, d, opts.invariants);
    IntegerMatrix proj = symalg::sym_power_map(p.quotient.projection, d);

    std::vector<Vec> image_gens;
    for (std::size_t i = 0; i < inv_q.rank(); ++i)
        image_gens.push_back(proj.apply(inv_q.generators().row(i)));
    Sublattice image = Sublattice::from_generators(inv_t.ambient_rank(), image_gens);
    require_contained(image, inv_t, "image of invariants is not invariant");

    AbelianGroupStructure coker = lattice::quotient_structure(image, inv_t);
    require_finite(coker, "coker(phi)_d");
    return coker;
}

AbelianGroupStructure h1(const groups::MatrixAction& action) {
    const groups::FiniteActionGroup& g = *action.group;
    std::size_t k = action.rank();
    if (g.size() == 1 || k == 0) return AbelianGroupStructure{0, {}};

    // distinct non-identity generators, in the group's generator order
    std::vector<int> gens;
    for (int s : g.generator_indices())
        if (s != 0 && std::find(gens.begin(), gens.end(), s) == gens.end()) gens.push_back(s);
    if (gens.empty()) throw invariant_error("nontrivial group without generators");
    std::size_t m = gens.size();
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < m; ++i) pos[gens[i]] = static_cast<int>(i);

    // E(f)(g) = C_g * (f(s_1),...,f(s_m)): built along the BFS tree
    std::vector<IntegerMatrix> c(g.size());
    c[0] = IntegerMatrix(k, m * k);
    for (std::size_t i = 1; i < g.size(); ++i) {
        int s = g.parent_gen(static_cast<int>(i));
        int h = g.parent_elem(static_cast<int>(i));
        IntegerMatrix ci = action.images[s] * c[h];
        int ps = pos[s];
        if (ps < 0) throw invariant_error("BFS parent is not a listed generator");
        for (std::size_t a = 0; a < k; ++a) ci.at(a, static_cast<std::size_t>(ps) * k + a) += 1;
        c[i] = std::move(ci);
    }

    // cocycle condition f(s*h) = f(s) + s.f(h) for every generator s and
    // element h
    IntegerMatrix constraints(m * g.size() * k, m * k);
    std::size_t row = 0;
    for (std::size_t si = 0; si < m; ++si) {
        int s = gens[si];
        for (std::size_t h = 0; h < g.size(); ++h) {
            int sh = g.compose_idx(s, static_cast<int>(h));
            IntegerMatrix block = c[sh] - action.images[s] * c[h];
            for (std::size_t a = 0; a < k; ++a) block.at(a, si * k + a) -= 1;
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < m * k; ++b) constraints.at(row + a, b) = block.at(a, b);
            row += k;
        }
    }
    Sublattice z1 = lattice::kernel_basis(constraints);

    std::vector<Vec> b1_gens;
    for (std::size_t j = 0; j < k; ++j) {
        Vec v(m * k, Int(0));
        for (std::size_t si = 0; si < m; ++si) {
            const IntegerMatrix& ms = action.images[gens[si]];
            for (std::size_t a = 0; a < k; ++a) v[si * k + a] = ms.at(a, j) - (a == j ? 1 : 0);
        }
        b1_gens.push_back(std::move(v));
    }
    Sublattice b1 = Sublattice::from_generators(m * k, b1_gens);

    AbelianGroupStructure result;
    try {
        result = lattice::quotient_structure(b1, z1);
    } catch (const validation_error& e) {
        throw invariant_error(std::string("coboundaries are not cocycles: ") + e.what());
    }
    if (result.free_rank != 0)
        throw invariant_error("H^1 of a finite group must be torsion (got " + result.to_string() +
                              ")");
    return result;
}

AbelianGroupStructure h1_of_ideal(const ResolutionProblem& p, int d) {
    symalg::check_degree_cap(d, p.options.max_degree);
    Sublattice j = symalg::ideal_piece(p.phat_matrix, d);
    if (j.rank() == 0) return AbelianGroupStructure{0, {}};
    symalg::SymmetricAction act = symalg::symmetric_power_action(*p.group, d);
    groups::MatrixAction ambient;
    ambient.group = p.group.get();
    ambient.images.reserve(p.group->size());
    for (std::size_t i = 0; i < p.group->size(); ++i) ambient.images.push_back(act.matrix_image(i));
    groups::MatrixAction on_j = groups::restrict_action_to_sublattice(ambient, j);
    return h1(on_j);
}

DegreeReport degree_report(const ResolutionProblem& p, int d, bool with_h1,
                           const IdealOptions& opts) {
    DegreeReport rep;
    rep.degree = d;
    if (d == 0) {
        rep.chow = AbelianGroupStructure{1, {}};
        return rep;
    }
    rep.chow = chow_group(p, d);
    KernelResult kr = base_change_kernel(p, d, opts);
    rep.kernel = kr.structure;
    rep.witnesses = std::move(kr.witnesses);
    rep.cokernel = base_change_cokernel(p, d, opts);
    if (with_h1) {
        rep.h1_check = h1_of_ideal(p, d);
        if (*rep.h1_check != rep.cokernel)
            throw invariant_error("cross-check failed in degree " + std::to_string(d) +
                                  ": direct cokernel is " + rep.cokernel.to_string() +
                                  " but H^1(Gamma, J_d) is " + rep.h1_check->to_string());
    }
    return rep;
}

} // namespace chowtori::chow
