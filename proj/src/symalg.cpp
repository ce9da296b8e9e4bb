#include "chowtori/symalg.hpp"

#include <algorithm>

#include "chowtori/errors.hpp"

namespace chowtori::symalg {

namespace {

void gen_monomials(int n, int d, int pos, Monomial& cur, std::vector<Monomial>& out) {
    if (pos == n - 1) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur[pos] = e;
        gen_monomials(n, d - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

} // namespace

GradedPiece::GradedPiece(int ambient_rank, int degree)
    : ambient_rank_(ambient_rank), degree_(degree) {
    if (degree < 0) throw validation_error("monomial_basis: negative degree");
    if (ambient_rank == 0) {
        if (degree == 0) basis_.push_back({});
    } else {
        Monomial cur(ambient_rank, 0);
        gen_monomials(ambient_rank, degree, 0, cur, basis_);
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
}

std::size_t GradedPiece::index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw invariant_error("monomial not in basis");
    return it->second;
}

GradedPiece monomial_basis(int n, int d) { return GradedPiece(n, d); }

void check_degree_cap(int d, int cap) {
    if (d > cap)
        throw resource_error("degree " + std::to_string(d) + " exceeds the configured cap " +
                                 std::to_string(cap),
                             cap);
}

lattice::IntegerMatrix SymmetricAction::matrix_image(std::size_t i) const {
    if (!is_signed()) return std::get<MatrixImages>(images_)[i];
    const groups::SignedPermutation& p = std::get<SignedImages>(images_)[i];
    return p.to_matrix();
}

Vec SymmetricAction::apply(std::size_t element, const Vec& v) const {
    std::size_t n = piece_.size();
    Vec r(n, Int(0));
    if (is_signed()) {
        const groups::SignedPermutation& p = std::get<SignedImages>(images_)[element];
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            r[p.image[i]] = p.sign[i] < 0 ? Int(-v[i]) : v[i];
        }
    } else {
        const lattice::IntegerMatrix& m = std::get<MatrixImages>(images_)[element];
        r = m.apply(v);
    }
    return r;
}

SymmetricAction symmetric_power_action(const groups::FiniteActionGroup& g, int d) {
    GradedPiece piece(static_cast<int>(g.degree()), d);
    SymmetricAction::SignedImages images;
    images.reserve(g.size());
    std::size_t n = g.degree();
    for (std::size_t e = 0; e < g.size(); ++e) {
        const groups::SignedPermutation& base = g.element(e);
        std::vector<int> img(piece.size());
        std::vector<int> sgn(piece.size());
        for (std::size_t t = 0; t < piece.size(); ++t) {
            const Monomial& a = piece.monomial(t);
            Monomial b(n, 0);
            int s = 1;
            for (std::size_t i = 0; i < n; ++i) {
                if (a[i] == 0) continue;
                b[base.image[i]] = a[i];
                if (base.sign[i] < 0 && (a[i] & 1)) s = -s;
            }
            img[t] = static_cast<int>(piece.index_of(b));
            sgn[t] = s;
        }
        images.emplace_back(std::move(img), std::move(sgn));
    }
    return SymmetricAction(&g, std::move(piece), std::move(images));
}

SymmetricAction symmetric_power_action(const groups::MatrixAction& base, int d) {
    const groups::FiniteActionGroup& g = *base.group;
    int n = static_cast<int>(base.rank());
    GradedPiece piece(n, d);
    SymmetricAction::MatrixImages mats;
    mats.reserve(g.size());
    bool all_signed = true;
    SymmetricAction::SignedImages signeds;
    for (std::size_t e = 0; e < g.size(); ++e) {
        lattice::IntegerMatrix m = sym_power_map(base.images[e], d);
        groups::SignedPermutation p;
        if (all_signed && groups::as_signed_permutation(m, p))
            signeds.push_back(std::move(p));
        else
            all_signed = false;
        mats.push_back(std::move(m));
    }
    if (all_signed) return SymmetricAction(&g, std::move(piece), std::move(signeds));
    return SymmetricAction(&g, std::move(piece), std::move(mats));
}

Vec multiply(const GradedPiece& pe, const Vec& u, const GradedPiece& pf, const Vec& v,
             const GradedPiece& out) {
    if (pe.ambient_rank() != pf.ambient_rank() || pe.ambient_rank() != out.ambient_rank())
        throw validation_error("multiply: mixed ambient ranks");
    if (pe.degree() + pf.degree() != out.degree())
        throw validation_error("multiply: degree mismatch");
    Vec r(out.size(), Int(0));
    int n = pe.ambient_rank();
    for (std::size_t i = 0; i < pe.size(); ++i) {
        if (u[i] == 0) continue;
        const Monomial& a = pe.monomial(i);
        for (std::size_t j = 0; j < pf.size(); ++j) {
            if (v[j] == 0) continue;
            const Monomial& b = pf.monomial(j);
            Monomial c(n);
            for (int t = 0; t < n; ++t) c[t] = a[t] + b[t];
            r[out.index_of(c)] += u[i] * v[j];
        }
    }
    return r;
}

lattice::Sublattice invariants(const SymmetricAction& act, const groups::SubgroupHandle& over,
                               InvariantsMethod method) {
    const GradedPiece& piece = act.piece();
    std::size_t n = piece.size();
    bool orbit = act.is_signed() && method != InvariantsMethod::Kernel;
    if (method == InvariantsMethod::OrbitSums && !act.is_signed())
        throw validation_error("orbit-sum invariants need a signed action");

    if (orbit) {
        std::vector<Vec> gens;
        std::vector<int> rel(n, 0); // 0 = unseen, else relative sign
        for (std::size_t seed = 0; seed < n; ++seed) {
            if (rel[seed] != 0) continue;
            std::vector<std::size_t> orbit_members{seed};
            rel[seed] = 1;
            bool cancels = false;
            for (std::size_t qi = 0; qi < orbit_members.size(); ++qi) {
                std::size_t m = orbit_members[qi];
                for (int h : over.members) {
                    const groups::SignedPermutation& p = act.signed_image(h);
                    std::size_t m2 = p.image[m];
                    int s2 = rel[m] * p.sign[m];
                    if (rel[m2] == 0) {
                        rel[m2] = s2;
                        orbit_members.push_back(m2);
                    } else if (rel[m2] != s2) {
                        cancels = true;
                    }
                }
                if (cancels) break;
            }
            if (cancels) {
                // still mark the whole orbit as visited
                for (std::size_t qi = 0; qi < orbit_members.size(); ++qi) {
                    std::size_t m = orbit_members[qi];
                    for (int h : over.members) {
                        std::size_t m2 = act.signed_image(h).image[m];
                        if (rel[m2] == 0) {
                            rel[m2] = 1;
                            orbit_members.push_back(m2);
                        }
                    }
                }
                continue;
            }
            Vec gen(n, Int(0));
            for (std::size_t m : orbit_members) gen[m] = rel[m];
            gens.push_back(std::move(gen));
        }
        return lattice::Sublattice::from_generators(n, gens);
    }

    // kernel of stacked (image(s) - id) over subgroup generators
    std::vector<int> gens = subgroup_generators(act.group(), over);
    if (gens.empty()) return lattice::Sublattice::full(n);
    lattice::IntegerMatrix stacked(gens.size() * n, n);
    lattice::IntegerMatrix id = lattice::IntegerMatrix::identity(n);
    for (std::size_t t = 0; t < gens.size(); ++t) {
        lattice::IntegerMatrix m = act.matrix_image(gens[t]) - id;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) stacked.at(t * n + i, j) = m.at(i, j);
    }
    return lattice::kernel_basis(stacked);
}

lattice::IntegerMatrix sym_power_map(const lattice::IntegerMatrix& f, int e) {
    int n = static_cast<int>(f.rows());
    int m = static_cast<int>(f.cols());
    GradedPiece src(m, e);
    GradedPiece dst(n, e);
    lattice::IntegerMatrix out(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const Monomial& a = src.monomial(c);
        // expand prod_j (f e_j)^{a_j} one linear factor at a time
        GradedPiece cur(n, 0);
        Vec poly(1, Int(1));
        int deg = 0;
        for (int j = 0; j < m; ++j) {
            for (int rep = 0; rep < a[j]; ++rep) {
                GradedPiece next(n, deg + 1);
                Vec np(next.size(), Int(0));
                for (std::size_t t = 0; t < cur.size(); ++t) {
                    if (poly[t] == 0) continue;
                    const Monomial& mono = cur.monomial(t);
                    for (int i = 0; i < n; ++i) {
                        if (f.at(i, j) == 0) continue;
                        Monomial m2 = mono;
                        m2[i] += 1;
                        np[next.index_of(m2)] += poly[t] * f.at(i, j);
                    }
                }
                cur = std::move(next);
                poly = std::move(np);
                ++deg;
            }
        }
        for (std::size_t i = 0; i < dst.size(); ++i) out.at(i, c) = poly[i];
    }
    return out;
}

lattice::Sublattice ideal_piece(const lattice::IntegerMatrix& embedding, int d) {
    if (d < 1) throw validation_error("ideal_piece: degree must be at least 1");
    int n = static_cast<int>(embedding.rows());
    GradedPiece below(n, d - 1);
    GradedPiece target(n, d);
    std::vector<Vec> gens;
    gens.reserve(embedding.cols() * below.size());
    for (std::size_t j = 0; j < embedding.cols(); ++j) {
        for (std::size_t t = 0; t < below.size(); ++t) {
            Vec g(target.size(), Int(0));
            const Monomial& mono = below.monomial(t);
            for (int i = 0; i < n; ++i) {
                if (embedding.at(i, j) == 0) continue;
                Monomial m2 = mono;
                m2[i] += 1;
                g[target.index_of(m2)] += embedding.at(i, j);
            }
            gens.push_back(std::move(g));
        }
    }
    return lattice::Sublattice::from_generators(target.size(), gens);
}

Vec induce(const Vec& z, const groups::SubgroupHandle& from, const SymmetricAction& act) {
    for (int h : from.members)
        if (act.apply(h, z) != z)
            throw validation_error("induce: element is not invariant under the subgroup (element " +
                                   std::to_string(h) + " moves it)");
    std::vector<int> reps = groups::coset_representatives(act.group(), from);
    Vec r(act.piece().size(), Int(0));
    for (int g : reps) {
        Vec t = act.apply(g, z);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += t[i];
    }
    return r;
}

std::vector<InducedGenerator> induced_generator_family(const ResolutionData& res,
                                                       const groups::SubgroupHandle& h, int d,
                                                       InvariantsMethod method) {
    const groups::FiniteActionGroup& g = *res.group;
    int n = static_cast<int>(g.degree());
    SymmetricAction act_d = symmetric_power_action(g, d);
    std::vector<InducedGenerator> family;

    for (int e = 1; e <= d; ++e) {
        SymmetricAction actP = symmetric_power_action(res.phat_action, e);
        lattice::Sublattice pinv = invariants(actP, h, method);
        if (pinv.rank() == 0) continue;
        lattice::IntegerMatrix push = sym_power_map(res.phat_matrix, e);
        GradedPiece piece_e(n, e);
        GradedPiece piece_rest(n, d - e);
        GradedPiece piece_d(n, d);

        std::vector<Vec> xs;
        xs.reserve(pinv.rank());
        for (std::size_t pi = 0; pi < pinv.rank(); ++pi)
            xs.push_back(push.apply(pinv.generators().row(pi)));

        if (e == d) {
            for (std::size_t pi = 0; pi < xs.size(); ++pi) {
                InducedGenerator gen;
                gen.vector = induce(xs[pi], h, act_d);
                gen.e = static_cast<std::size_t>(e);
                gen.p_index = pi;
                gen.q_index = 0;
                family.push_back(std::move(gen));
            }
            continue;
        }
        SymmetricAction actQ = symmetric_power_action(g, d - e);
        lattice::Sublattice qinv = invariants(actQ, h, method);
        for (std::size_t pi = 0; pi < xs.size(); ++pi)
            for (std::size_t qi = 0; qi < qinv.rank(); ++qi) {
                Vec z = multiply(piece_e, xs[pi], piece_rest, qinv.generators().row(qi), piece_d);
                InducedGenerator gen;
                gen.vector = induce(z, h, act_d);
                gen.e = static_cast<std::size_t>(e);
                gen.p_index = pi;
                gen.q_index = qi;
                family.push_back(std::move(gen));
            }
    }
    return family;
}

lattice::Sublattice induced_contribution(const ResolutionData& res,
                                         const groups::SubgroupHandle& h, int d,
                                         InvariantsMethod method) {
    GradedPiece piece(static_cast<int>(res.group->degree()), d);
    std::vector<Vec> gens;
    for (auto& ig : induced_generator_family(res, h, d, method)) gens.push_back(std::move(ig.vector));
    return lattice::Sublattice::from_generators(piece.size(), gens);
}

} // namespace chowtori::symalg
