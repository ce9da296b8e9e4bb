#include "chowtori/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "chowtori/errors.hpp"

namespace chowtori::lattice {

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (d.at(i, i) != 0) ++r;
    return r;
}

Vec SmithDecomposition::invariant_factors() const {
    Vec f;
    std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (d.at(i, i) != 0) f.push_back(d.at(i, i));
    return f;
}

namespace {

// Position of the entry with smallest nonzero absolute value in the
// trailing submatrix, preferring lower indices on ties.
bool find_min_pivot(const IntegerMatrix& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j) {
            const Int& x = m.at(i, j);
            if (x == 0) continue;
            Int a = abs_int(x);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
    std::size_t m = a.rows(), n = a.cols();
    SmithDecomposition s{IntegerMatrix::identity(m), a, IntegerMatrix::identity(n)};
    IntegerMatrix& d = s.d;
    IntegerMatrix& u = s.u;
    IntegerMatrix& v = s.v;

    std::size_t bound = std::min(m, n);
    for (std::size_t t = 0; t < bound; ++t) {
        std::size_t pi = t, pj = t;
        if (!find_min_pivot(d, t, pi, pj)) break;
        for (;;) {
            find_min_pivot(d, t, pi, pj);
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                if (q != 0) {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if (d.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                if (q != 0) {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if (d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide the rest of the submatrix.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n && divides; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    return s;
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& m) {
    IntegerMatrix u;
    return hermite_normal_form(m, u);
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& m, IntegerMatrix& transform) {
    IntegerMatrix h = m;
    transform = IntegerMatrix::identity(m.rows());
    std::size_t next = 0; // next pivot row
    for (std::size_t c = 0; c < h.cols() && next < h.rows(); ++c) {
        // gcd-reduce column c over the active rows
        for (;;) {
            std::size_t best = h.rows();
            Int bestabs = 0;
            for (std::size_t i = next; i < h.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                Int a = abs_int(h.at(i, c));
                if (best == h.rows() || a < bestabs) {
                    best = i;
                    bestabs = a;
                }
            }
            if (best == h.rows()) break; // column clear below
            h.swap_rows(next, best);
            transform.swap_rows(next, best);
            bool clean = true;
            for (std::size_t i = next + 1; i < h.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                Int q = h.at(i, c) / h.at(next, c);
                if (q != 0) {
                    h.add_row(i, next, -q);
                    transform.add_row(i, next, -q);
                }
                if (h.at(i, c) != 0) clean = false;
            }
            if (clean) {
                if (h.at(next, c) < 0) {
                    h.negate_row(next);
                    transform.negate_row(next);
                }
                // reduce the entries above the pivot into [0, pivot)
                for (std::size_t i = 0; i < next; ++i) {
                    Int q = floor_div(h.at(i, c), h.at(next, c));
                    if (q != 0) {
                        h.add_row(i, next, -q);
                        transform.add_row(i, next, -q);
                    }
                }
                ++next;
                break;
            }
        }
    }
    return h;
}

IntegerMatrix inverse_unimodular(const IntegerMatrix& u) {
    if (u.rows() != u.cols()) throw validation_error("inverse of non-square matrix");
    IntegerMatrix t;
    IntegerMatrix h = hermite_normal_form(u, t);
    if (!h.is_identity()) throw validation_error("matrix is not unimodular");
    return t;
}

Sublattice Sublattice::zero(std::size_t ambient_rank) {
    Sublattice l;
    l.ambient_rank_ = ambient_rank;
    l.gens_ = IntegerMatrix(0, ambient_rank);
    return l;
}

Sublattice Sublattice::full(std::size_t ambient_rank) {
    Sublattice l;
    l.ambient_rank_ = ambient_rank;
    l.gens_ = IntegerMatrix::identity(ambient_rank);
    return l;
}

Sublattice Sublattice::from_generators(std::size_t ambient_rank, const std::vector<Vec>& vectors) {
    for (std::size_t i = 0; i < vectors.size(); ++i)
        if (vectors[i].size() != ambient_rank)
            throw validation_error("generator " + std::to_string(i) + " has length " +
                                   std::to_string(vectors[i].size()) + ", ambient rank is " +
                                   std::to_string(ambient_rank));
    IntegerMatrix stacked = IntegerMatrix::from_rows(ambient_rank, vectors);
    return from_matrix_rows(stacked);
}

Sublattice Sublattice::from_matrix_rows(const IntegerMatrix& rows) {
    IntegerMatrix h = hermite_normal_form(rows);
    std::size_t nz = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (!zero) ++nz;
        else break; // HNF puts zero rows last
    }
    Sublattice l;
    l.ambient_rank_ = h.cols();
    l.gens_ = IntegerMatrix(nz, h.cols());
    for (std::size_t i = 0; i < nz; ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) l.gens_.at(i, j) = h.at(i, j);
    return l;
}

std::vector<Vec> Sublattice::generator_rows() const {
    std::vector<Vec> rows;
    rows.reserve(gens_.rows());
    for (std::size_t i = 0; i < gens_.rows(); ++i) rows.push_back(gens_.row(i));
    return rows;
}

Sublattice kernel_basis(const IntegerMatrix& a) {
    std::size_t n = a.cols();
    IntegerMatrix v = IntegerMatrix::identity(n);
    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), std::size_t{0});

    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (active.empty()) break;
        // b = (row r of a) * V, restricted to active columns
        Vec b(active.size());
        bool any = false;
        for (std::size_t k = 0; k < active.size(); ++k) {
            Int acc = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const Int& ai = a.at(r, i);
                if (ai != 0) acc += ai * v.at(i, active[k]);
            }
            b[k] = acc;
            if (acc != 0) any = true;
        }
        if (!any) continue;
        // gcd-eliminate within the active columns until one entry remains
        for (;;) {
            std::size_t piv = active.size();
            Int pabs = 0;
            for (std::size_t k = 0; k < active.size(); ++k) {
                if (b[k] == 0) continue;
                Int ab = abs_int(b[k]);
                if (piv == active.size() || ab < pabs) {
                    piv = k;
                    pabs = ab;
                }
            }
            bool clean = true;
            for (std::size_t k = 0; k < active.size(); ++k) {
                if (k == piv || b[k] == 0) continue;
                Int q = b[k] / b[piv];
                if (q != 0) {
                    v.add_col(active[k], active[piv], -q);
                    b[k] -= q * b[piv];
                }
                if (b[k] != 0) clean = false;
            }
            if (clean) {
                active.erase(active.begin() + static_cast<std::ptrdiff_t>(piv));
                break;
            }
        }
    }

    std::vector<Vec> gens;
    gens.reserve(active.size());
    for (std::size_t j : active) gens.push_back(v.col(j));
    return Sublattice::from_generators(n, gens);
}

Sublattice intersect(const Sublattice& a, const Sublattice& b) {
    if (a.ambient_rank() != b.ambient_rank())
        throw validation_error("intersect: ambient rank mismatch (" +
                               std::to_string(a.ambient_rank()) + " vs " +
                               std::to_string(b.ambient_rank()) + ")");
    std::size_t n = a.ambient_rank();
    std::size_t ka = a.rank(), kb = b.rank();
    if (ka == 0 || kb == 0) return Sublattice::zero(n);
    // x in A meet B  <=>  x = s^T G_A = t^T G_B; solve the stacked kernel
    IntegerMatrix m(n, ka + kb);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < ka; ++j) m.at(i, j) = a.generators().at(j, i);
        for (std::size_t j = 0; j < kb; ++j) m.at(i, ka + j) = -b.generators().at(j, i);
    }
    Sublattice ker = kernel_basis(m);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < ker.rank(); ++i) {
        Vec x(n, Int(0));
        for (std::size_t j = 0; j < ka; ++j) {
            const Int& c = ker.generators().at(i, j);
            if (c == 0) continue;
            for (std::size_t t = 0; t < n; ++t) x[t] += c * a.generators().at(j, t);
        }
        gens.push_back(std::move(x));
    }
    return Sublattice::from_generators(n, gens);
}

Sublattice lattice_sum(const Sublattice& a, const Sublattice& b) {
    if (a.ambient_rank() != b.ambient_rank())
        throw validation_error("lattice_sum: ambient rank mismatch");
    return Sublattice::from_matrix_rows(vstack(a.generators(), b.generators()));
}

Sublattice saturation(const Sublattice& l) {
    if (l.rank() == 0) return l;
    Sublattice w = kernel_basis(l.generators());
    return kernel_basis(w.generators());
}

Int AbelianGroupStructure::torsion_order() const {
    Int o = 1;
    for (const Int& t : torsion) o *= t;
    return o;
}

std::string AbelianGroupStructure::to_string() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const Int& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

namespace {

// Coefficient matrix of sub's generators over sup's HNF basis.
IntegerMatrix coefficients_over(const Sublattice& sub, const Sublattice& sup) {
    IntegerMatrix c(sub.rank(), sup.rank());
    for (std::size_t i = 0; i < sub.rank(); ++i) {
        Membership m = membership(sub.generators().row(i), sup);
        if (!m.member)
            throw validation_error("quotient_structure: generator " + std::to_string(i) +
                                   " of the subgroup is not contained in the supergroup");
        for (std::size_t j = 0; j < sup.rank(); ++j) c.at(i, j) = m.coefficients[j];
    }
    return c;
}

AbelianGroupStructure structure_from_relations(const SmithDecomposition& s, std::size_t ambient) {
    AbelianGroupStructure g;
    Vec f = s.invariant_factors();
    g.free_rank = ambient - f.size();
    for (const Int& x : f)
        if (x > 1) g.torsion.push_back(x);
    return g;
}

} // namespace

AbelianGroupStructure quotient_structure(const Sublattice& sub, const Sublattice& sup) {
    if (sub.ambient_rank() != sup.ambient_rank())
        throw validation_error("quotient_structure: ambient rank mismatch");
    IntegerMatrix c = coefficients_over(sub, sup);
    return structure_from_relations(smith_normal_form(c), sup.rank());
}

QuotientWithWitnesses quotient_structure_with_witnesses(const Sublattice& sub,
                                                        const Sublattice& sup) {
    if (sub.ambient_rank() != sup.ambient_rank())
        throw validation_error("quotient_structure: ambient rank mismatch");
    IntegerMatrix c = coefficients_over(sub, sup);
    SmithDecomposition s = smith_normal_form(c);
    QuotientWithWitnesses q;
    q.structure = structure_from_relations(s, sup.rank());
    if (!q.structure.torsion.empty()) {
        // Rows of V^-1 are a basis of the coefficient space in which the
        // relation lattice is diagonal; row i generates the Z/d_i part.
        IntegerMatrix vinv = inverse_unimodular(s.v);
        std::size_t n = std::min(s.d.rows(), s.d.cols());
        for (std::size_t i = 0; i < n; ++i) {
            if (s.d.at(i, i) <= 1) continue;
            Vec wit(sup.ambient_rank(), Int(0));
            for (std::size_t j = 0; j < sup.rank(); ++j) {
                const Int& coeff = vinv.at(i, j);
                if (coeff == 0) continue;
                for (std::size_t t = 0; t < sup.ambient_rank(); ++t)
                    wit[t] += coeff * sup.generators().at(j, t);
            }
            q.torsion_witnesses.push_back(std::move(wit));
        }
    }
    return q;
}

Membership membership(const Vec& v, const Sublattice& l) {
    if (v.size() != l.ambient_rank())
        throw validation_error("membership: vector length " + std::to_string(v.size()) +
                               " does not match ambient rank " +
                               std::to_string(l.ambient_rank()));
    Membership result;
    Vec w = v;
    Vec coeffs(l.rank(), Int(0));
    std::size_t r = 0;
    const IntegerMatrix& g = l.generators();
    for (std::size_t c = 0; c < l.ambient_rank(); ++c) {
        bool pivot_here = false;
        if (r < l.rank()) {
            // pivot of row r is its first nonzero column
            std::size_t pc = 0;
            while (pc < l.ambient_rank() && g.at(r, pc) == 0) ++pc;
            pivot_here = (pc == c);
        }
        if (pivot_here) {
            const Int& p = g.at(r, c);
            if (w[c] % p != 0) {
                result.member = false;
                result.failed_column = c;
                result.reason = "nondivisible";
                return result;
            }
            Int q = w[c] / p;
            coeffs[r] = q;
            if (q != 0)
                for (std::size_t t = c; t < l.ambient_rank(); ++t) w[t] -= q * g.at(r, t);
            ++r;
        } else if (w[c] != 0) {
            result.member = false;
            result.failed_column = c;
            result.reason = "outside-span";
            return result;
        }
    }
    result.member = true;
    result.coefficients = std::move(coeffs);
    return result;
}

std::optional<Vec> express_over_rows(const IntegerMatrix& family, const Vec& target) {
    if (family.cols() != target.size())
        throw validation_error("express_over_rows: dimension mismatch");
    std::size_t m = family.rows();
    // Kernel combinations of the rows of [family; target]: any element
    // with last coordinate -1 yields the sought coefficients.
    IntegerMatrix stacked(m + 1, family.cols());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < family.cols(); ++j) stacked.at(i, j) = family.at(i, j);
    for (std::size_t j = 0; j < family.cols(); ++j) stacked.at(m, j) = target[j];
    Sublattice ker = kernel_basis(stacked.transpose());
    // Combine kernel generators to reach last coordinate exactly -1.
    Int g = 0;
    Vec combo(m + 1, Int(0));
    Vec current(m + 1, Int(0));
    for (std::size_t i = 0; i < ker.rank(); ++i) {
        const Int& lam = ker.generators().at(i, m);
        if (lam == 0) continue;
        if (g == 0) {
            g = lam;
            current = ker.generators().row(i);
            continue;
        }
        // extended gcd step: g, lam -> gcd
        Int old_g = g;
        Int a = g, b = lam, x0 = 1, x1 = 0;
        while (b != 0) {
            Int q = a / b;
            Int t = a - q * b;
            a = b;
            b = t;
            Int tx = x0 - q * x1;
            x0 = x1;
            x1 = tx;
        }
        // a = gcd, x0 satisfies old_g*x0 + lam*y = a for some y
        Int y = (a - old_g * x0) / lam;
        Vec next(m + 1, Int(0));
        for (std::size_t t2 = 0; t2 <= m; ++t2)
            next[t2] = x0 * current[t2] + y * ker.generators().at(i, t2);
        current = std::move(next);
        g = a;
    }
    if (g == 0) return std::nullopt;
    if (abs_int(g) != 1) return std::nullopt;
    // scale so that the last coordinate is exactly -1
    Int scale = (current[m] == 1) ? Int(-1) : Int(1);
    Vec c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = scale * current[i];
    return c;
}

Vec reduce_mod(const Vec& v, const Sublattice& l) {
    if (v.size() != l.ambient_rank()) throw validation_error("reduce_mod: dimension mismatch");
    Vec w = v;
    const IntegerMatrix& g = l.generators();
    for (std::size_t r = 0; r < l.rank(); ++r) {
        std::size_t pc = 0;
        while (pc < l.ambient_rank() && g.at(r, pc) == 0) ++pc;
        Int q = floor_div(w[pc], g.at(r, pc));
        if (q != 0)
            for (std::size_t t = pc; t < l.ambient_rank(); ++t) w[t] -= q * g.at(r, t);
    }
    return w;
}

} // namespace chowtori::lattice
