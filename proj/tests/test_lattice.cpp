#include <doctest.h>

#include <random>

#include "chowtori/errors.hpp"
#include "chowtori/lattice.hpp"
#include "support/oracles.hpp"

using namespace chowtori;
using lattice::IntegerMatrix;
using lattice::Sublattice;

namespace {

Vec iv(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

void check_smith(const IntegerMatrix& a) {
    lattice::SmithDecomposition s = lattice::smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs_int(lattice::determinant(s.u)) == 1);
    CHECK(abs_int(lattice::determinant(s.v)) == 1);
    Vec f = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
    for (const Int& x : f) CHECK(x > 0);
    // off-diagonal zero, trailing zeros after the factors
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) CHECK(s.d.at(i, j) == 0);
}

} // namespace

TEST_CASE("smith normal form on pinned inputs") {
    SUBCASE("identity") {
        auto s = lattice::smith_normal_form(IntegerMatrix::identity(2));
        CHECK(s.d.is_identity());
        check_smith(IntegerMatrix::identity(2));
    }
    SUBCASE("zero matrix") {
        IntegerMatrix z(3, 2);
        auto s = lattice::smith_normal_form(z);
        CHECK(s.d.is_zero());
        check_smith(z);
    }
    SUBCASE("2x2 with nontrivial factors") {
        auto a = IntegerMatrix::from_init({{2, 4}, {6, 8}});
        auto s = lattice::smith_normal_form(a);
        REQUIRE(s.invariant_factors().size() == 2);
        CHECK(s.d.at(0, 0) == 2);
        CHECK(s.d.at(1, 1) == 4);
        CHECK(abs_int(lattice::determinant(a)) == 8); // = 2 * 4
        check_smith(a);
    }
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        IntegerMatrix a(dim(rng), dim(rng));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
        check_smith(a);
    }
}

TEST_CASE("kernel_basis") {
    SUBCASE("all-ones row") {
        auto k = lattice::kernel_basis(IntegerMatrix::from_init({{1, 1, 1}}));
        CHECK(k.rank() == 2);
        CHECK(lattice::membership(iv({1, -1, 0}), k).member);
        CHECK(lattice::membership(iv({0, 1, -1}), k).member);
    }
    SUBCASE("invertible matrix has zero kernel") {
        auto k = lattice::kernel_basis(IntegerMatrix::from_init({{1, 2}, {3, 5}}));
        CHECK(k.rank() == 0);
    }
    SUBCASE("rank-1 projection") {
        auto k = lattice::kernel_basis(IntegerMatrix::from_init({{2, 0}, {0, 0}}));
        CHECK(k == Sublattice::from_generators(2, {iv({0, 1})}));
    }
    SUBCASE("kernel vectors annihilate, and the kernel is saturated") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> dim(1, 5), entry(-4, 4);
        for (int trial = 0; trial < 40; ++trial) {
            IntegerMatrix a(dim(rng), dim(rng));
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
            Sublattice k = lattice::kernel_basis(a);
            for (std::size_t i = 0; i < k.rank(); ++i)
                CHECK(is_zero_vec(a.apply(k.generators().row(i))));
            CHECK(lattice::saturation(k) == k);
        }
    }
}

TEST_CASE("sublattice_from_generators") {
    CHECK(Sublattice::from_generators(2, {iv({2, 0}), iv({0, 3})}).generators() ==
          IntegerMatrix::from_init({{2, 0}, {0, 3}}));
    CHECK(Sublattice::from_generators(2, {iv({1, 1}), iv({2, 2})}) ==
          Sublattice::from_generators(2, {iv({1, 1})}));
    CHECK(Sublattice::from_generators(2, {}).rank() == 0);
    CHECK_THROWS_AS(Sublattice::from_generators(2, {iv({1, 2, 3})}), validation_error);

    SUBCASE("idempotent on its own rows") {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> entry(-6, 6);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Vec> gens;
            for (int i = 0; i < 4; ++i) {
                Vec v(5);
                for (auto& x : v) x = entry(rng);
                gens.push_back(v);
            }
            Sublattice l = Sublattice::from_generators(5, gens);
            CHECK(Sublattice::from_generators(5, l.generator_rows()) == l);
        }
    }
}

TEST_CASE("intersect") {
    Sublattice a = Sublattice::from_generators(2, {iv({2, 0})});
    Sublattice b = Sublattice::from_generators(2, {iv({3, 0})});
    CHECK(lattice::intersect(a, b) == Sublattice::from_generators(2, {iv({6, 0})}));

    Sublattice any = Sublattice::from_generators(2, {iv({3, 5}), iv({1, 1})});
    CHECK(lattice::intersect(Sublattice::full(2), any) == any);

    CHECK(lattice::intersect(Sublattice::from_generators(2, {iv({1, 0})}),
                             Sublattice::from_generators(2, {iv({0, 1})}))
              .rank() == 0);

    CHECK_THROWS_AS(lattice::intersect(Sublattice::full(2), Sublattice::full(3)),
                    validation_error);

    SUBCASE("contained in both, and catches common elements") {
        std::mt19937 rng(123);
        std::uniform_int_distribution<int> entry(-5, 5);
        for (int trial = 0; trial < 40; ++trial) {
            auto rnd = [&](int k) {
                std::vector<Vec> gens;
                for (int i = 0; i < k; ++i) {
                    Vec v(4);
                    for (auto& x : v) x = entry(rng);
                    gens.push_back(v);
                }
                return Sublattice::from_generators(4, gens);
            };
            Sublattice a4 = rnd(3), b4 = rnd(3);
            Sublattice meet = lattice::intersect(a4, b4);
            for (std::size_t i = 0; i < meet.rank(); ++i) {
                CHECK(lattice::membership(meet.generators().row(i), a4).member);
                CHECK(lattice::membership(meet.generators().row(i), b4).member);
            }
            // random combinations of a4 that happen to lie in b4 must be
            // members of the intersection
            for (int probe = 0; probe < 10; ++probe) {
                Vec v(4, Int(0));
                for (std::size_t i = 0; i < a4.rank(); ++i)
                    add_scaled(v, a4.generators().row(i), Int(entry(rng)));
                if (lattice::membership(v, b4).member)
                    CHECK(lattice::membership(v, meet).member);
            }
        }
    }
}

TEST_CASE("quotient_structure on pinned inputs") {
    Sublattice sub = Sublattice::from_generators(2, {iv({2, 0}), iv({0, 3})});
    auto q = lattice::quotient_structure(sub, Sublattice::full(2));
    CHECK(q.free_rank == 0);
    REQUIRE(q.torsion.size() == 1);
    CHECK(q.torsion[0] == 6);

    CHECK(lattice::quotient_structure(sub, sub).trivial());

    auto free3 = lattice::quotient_structure(Sublattice::zero(3), Sublattice::full(3));
    CHECK(free3.free_rank == 3);
    CHECK(free3.torsion.empty());

    // containment violations name the offending generator
    Sublattice big = Sublattice::from_generators(2, {iv({1, 0})});
    Sublattice small = Sublattice::from_generators(2, {iv({0, 1})});
    CHECK_THROWS_WITH_AS(lattice::quotient_structure(big, small),
                         doctest::Contains("generator 0"), validation_error);
}

TEST_CASE("quotient_structure matches brute-force coset enumeration") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> rdist(1, 4), entry(-4, 4), uent(-2, 2);
    int done = 0;
    while (done < 25) {
        int r = rdist(rng);
        IntegerMatrix c(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) c.at(i, j) = entry(rng);
        Int det = lattice::determinant(c);
        if (det == 0 || abs_int(det) > 200) continue;
        std::size_t cosets = test_support::count_cosets(c, 220);
        REQUIRE(cosets > 0);

        // embed both groups through a random unimodular change of ambient
        IntegerMatrix t = IntegerMatrix::identity(r);
        for (int ops = 0; ops < 6; ++ops) {
            int i = std::uniform_int_distribution<int>(0, r - 1)(rng);
            int j = std::uniform_int_distribution<int>(0, r - 1)(rng);
            if (i != j) t.add_row(i, j, uent(rng));
        }
        std::vector<Vec> sub_rows, sup_rows;
        for (int i = 0; i < r; ++i) sup_rows.push_back(t.row(i));
        IntegerMatrix ct = c * t;
        for (int i = 0; i < r; ++i) sub_rows.push_back(ct.row(i));
        auto q = lattice::quotient_structure(Sublattice::from_generators(r, sub_rows),
                                             Sublattice::from_generators(r, sup_rows));
        CHECK(q.free_rank == 0);
        CHECK(q.torsion_order() == Int(cosets));
        ++done;
    }
}

TEST_CASE("quotient witnesses have the stated order") {
    Sublattice sub = Sublattice::from_generators(2, {iv({2, 0}), iv({0, 3})});
    auto q = lattice::quotient_structure_with_witnesses(sub, Sublattice::full(2));
    REQUIRE(q.structure.torsion.size() == 1);
    REQUIRE(q.torsion_witnesses.size() == 1);
    const Vec& w = q.torsion_witnesses[0];
    for (Int k = 1; k < 6; ++k)
        CHECK_FALSE(lattice::membership(scaled(w, k), sub).member);
    CHECK(lattice::membership(scaled(w, Int(6)), sub).member);
}

TEST_CASE("membership") {
    CHECK(lattice::membership(iv({0, 0}), Sublattice::from_generators(2, {iv({2, 0})})).member);
    auto nm = lattice::membership(iv({1, 0}), Sublattice::from_generators(2, {iv({2, 0})}));
    CHECK_FALSE(nm.member);
    CHECK(nm.failed_column == 0);
    CHECK(nm.reason == "nondivisible");

    auto m = lattice::membership(iv({4, 6}),
                                 Sublattice::from_generators(2, {iv({2, 0}), iv({0, 3})}));
    REQUIRE(m.member);
    CHECK(m.coefficients == iv({2, 2}));

    auto outside =
        lattice::membership(iv({0, 1}), Sublattice::from_generators(2, {iv({1, 0})}));
    CHECK_FALSE(outside.member);
    CHECK(outside.reason == "outside-span");
    CHECK(outside.failed_column == 1);

    CHECK_THROWS_AS(lattice::membership(iv({1}), Sublattice::full(2)), validation_error);
}

TEST_CASE("express_over_rows") {
    auto family = IntegerMatrix::from_init({{2, 0}, {3, 0}});
    auto c = lattice::express_over_rows(family, iv({1, 0}));
    REQUIRE(c.has_value());
    Vec check(2, Int(0));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) check[j] += (*c)[i] * family.at(i, j);
    CHECK(check == iv({1, 0}));
    CHECK_FALSE(lattice::express_over_rows(family, iv({0, 1})).has_value());
    CHECK_FALSE(lattice::express_over_rows(IntegerMatrix::from_init({{2, 0}}), iv({1, 0}))
                    .has_value());
}

TEST_CASE("hermite form transform and unimodular inverse") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> entry(-5, 5), uent(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        IntegerMatrix m(4, 3);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = entry(rng);
        IntegerMatrix u;
        IntegerMatrix h = lattice::hermite_normal_form(m, u);
        CHECK(u * m == h);
        CHECK(abs_int(lattice::determinant(u)) == 1);

        IntegerMatrix t = IntegerMatrix::identity(4);
        for (int ops = 0; ops < 8; ++ops) {
            int i = std::uniform_int_distribution<int>(0, 3)(rng);
            int j = std::uniform_int_distribution<int>(0, 3)(rng);
            if (i != j) t.add_row(i, j, uent(rng));
        }
        CHECK((lattice::inverse_unimodular(t) * t).is_identity());
    }
}

TEST_CASE("structure printing") {
    lattice::AbelianGroupStructure g;
    CHECK(g.to_string() == "0");
    g.free_rank = 1;
    CHECK(g.to_string() == "Z");
    g.free_rank = 2;
    g.torsion = {Int(2), Int(6)};
    CHECK(g.to_string() == "Z^2 + Z/2 + Z/6");
}
