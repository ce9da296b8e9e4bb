#include <doctest.h>

#include <random>
#include <set>

#include "chowtori/errors.hpp"
#include "chowtori/groups.hpp"
#include "support/oracles.hpp"
#include "support/paper_data.hpp"

using namespace chowtori;
using groups::FiniteActionGroup;
using groups::SignedPermutation;

TEST_CASE("signed permutation composition and inverse") {
    // g: e1 -> e2, e2 -> -e1
    SignedPermutation g({1, 0}, {1, -1});
    SignedPermutation h = compose(g, g);
    CHECK(h.image == std::vector<int>{0, 1});
    CHECK(h.sign == std::vector<int>{-1, -1}); // g^2 = -id
    CHECK(compose(g, g.inverse()).is_identity());
    CHECK(compose(g.inverse(), g).is_identity());
    CHECK(g.to_matrix() * g.inverse().to_matrix() == lattice::IntegerMatrix::identity(2));

    CHECK_THROWS_AS(SignedPermutation({0, 0}, {1, 1}), validation_error);
    CHECK_THROWS_AS(SignedPermutation({0, 1}, {2, 1}), validation_error);
}

TEST_CASE("composition is associative on sampled triples and matches matrices") {
    std::mt19937 rng(5150);
    auto random_perm = [&](std::size_t n) {
        std::vector<int> img(n);
        for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<int>(i);
        std::shuffle(img.begin(), img.end(), rng);
        std::vector<int> sgn(n);
        for (auto& s : sgn) s = rng() % 2 ? 1 : -1;
        return SignedPermutation(img, sgn);
    };
    for (int t = 0; t < 50; ++t) {
        auto a = random_perm(5), b = random_perm(5), c = random_perm(5);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        CHECK(compose(a, b).to_matrix() == a.to_matrix() * b.to_matrix());
    }
}

TEST_CASE("close_group basics") {
    SUBCASE("one 2-cycle gives order 2") {
        FiniteActionGroup g = FiniteActionGroup::close({SignedPermutation({1, 0}, {1, 1})});
        CHECK(g.size() == 2);
        CHECK(g.element(0).is_identity());
    }
    SUBCASE("quaternion regular representation has order 8") {
        FiniteActionGroup q8 = test_support::q8_group();
        CHECK(q8.size() == 8);
        for (std::size_t i = 0; i < q8.size(); ++i)
            CHECK(q8.element(i).is_pure_permutation());
    }
    SUBCASE("sign-twisted symmetric group on doubled rank has order 24") {
        FiniteActionGroup s4 = test_support::signed_sn_group(4);
        CHECK(s4.size() == 24);
    }
    SUBCASE("bound is enforced") {
        CHECK_THROWS_AS(test_support::signed_sn_group(4, 10), resource_error);
    }
    SUBCASE("inverses and identity present, table consistent") {
        FiniteActionGroup q8 = test_support::q8_group();
        for (std::size_t i = 0; i < q8.size(); ++i) {
            CHECK(q8.compose_idx(static_cast<int>(i), q8.inverse_idx(static_cast<int>(i))) == 0);
            for (std::size_t j = 0; j < q8.size(); ++j) {
                int ij = q8.compose_idx(static_cast<int>(i), static_cast<int>(j));
                CHECK(q8.element(ij) == compose(q8.element(i), q8.element(j)));
            }
        }
    }
}

TEST_CASE("subgroup enumeration") {
    SUBCASE("trivial group") {
        FiniteActionGroup t = FiniteActionGroup::trivial(3);
        auto classes = groups::all_subgroups_up_to_conjugacy(t);
        REQUIRE(classes.size() == 1);
        CHECK(classes[0].members == std::vector<int>{0});
    }
    SUBCASE("quaternion group: 6 subgroups, 6 classes") {
        FiniteActionGroup q8 = test_support::q8_group();
        auto all = groups::all_subgroups(q8);
        auto oracle = test_support::powerset_subgroups(q8, 2);
        CHECK(all.size() == 6);
        CHECK(all == oracle);
        auto classes = groups::all_subgroups_up_to_conjugacy(q8);
        CHECK(classes.size() == 6);
        std::multiset<std::size_t> sizes;
        for (const auto& h : classes) sizes.insert(h.size());
        CHECK(sizes == std::multiset<std::size_t>{1, 2, 4, 4, 4, 8});
    }
    SUBCASE("symmetric group on 4 letters: 30 subgroups, 11 classes") {
        FiniteActionGroup s4 = test_support::plain_sn_group(4);
        auto all = groups::all_subgroups(s4);
        auto oracle = test_support::powerset_subgroups(s4, 3);
        CHECK(all.size() == 30);
        CHECK(all == oracle);
        CHECK(groups::all_subgroups_up_to_conjugacy(s4).size() == 11);
    }
    SUBCASE("signed rank-8 realization of the order-24 group also has 11 classes") {
        FiniteActionGroup s4 = test_support::signed_sn_group(4);
        CHECK(groups::all_subgroups_up_to_conjugacy(s4).size() == 11);
    }
}

TEST_CASE("coset representatives") {
    FiniteActionGroup s3 = test_support::plain_sn_group(3);
    SUBCASE("full subgroup -> identity only") {
        auto reps = groups::coset_representatives(s3, groups::full_subgroup(s3));
        CHECK(reps == std::vector<int>{0});
    }
    SUBCASE("trivial subgroup -> everything") {
        auto reps = groups::coset_representatives(s3, groups::trivial_subgroup());
        CHECK(reps.size() == s3.size());
    }
    SUBCASE("alternating subgroup of index 2") {
        // closure of a 3-cycle
        int c3 = -1;
        for (std::size_t i = 1; i < s3.size(); ++i)
            if (s3.compose_idx(static_cast<int>(i), static_cast<int>(i)) != 0 &&
                !s3.element(i).is_identity()) {
                if (groups::subgroup_closure(s3, {static_cast<int>(i)}).size() == 3) {
                    c3 = static_cast<int>(i);
                    break;
                }
            }
        REQUIRE(c3 >= 0);
        auto a3 = groups::subgroup_closure(s3, {c3});
        auto reps = groups::coset_representatives(s3, a3);
        CHECK(reps.size() == 2);
    }
    SUBCASE("rep cosets cover the group disjointly") {
        FiniteActionGroup q8 = test_support::q8_group();
        for (const auto& h : groups::all_subgroups(q8)) {
            auto reps = groups::coset_representatives(q8, h);
            CHECK(reps.size() * h.size() == q8.size());
            std::set<int> covered;
            for (int r : reps)
                for (int m : h.members) covered.insert(q8.compose_idx(r, m));
            CHECK(covered.size() == q8.size());
        }
    }
}

TEST_CASE("restrict_action_to_sublattice") {
    SUBCASE("full ambient lattice reproduces the action") {
        FiniteActionGroup q8 = test_support::q8_group();
        auto act = groups::restrict_action_to_sublattice(q8, lattice::Sublattice::full(8));
        for (std::size_t i = 0; i < q8.size(); ++i)
            CHECK(act.images[i] == q8.element(i).to_matrix());
    }
    SUBCASE("quaternion action on the paired sublattice factors through 2x2 swaps") {
        FiniteActionGroup q8 = test_support::q8_group();
        auto act = groups::restrict_action_to_sublattice(q8, test_support::q8_phat());
        // every image is a plain permutation matrix of the four pair-sums,
        // and the action is not faithful: its image has order 4
        std::set<std::string> distinct;
        for (std::size_t i = 0; i < q8.size(); ++i) {
            SignedPermutation p;
            REQUIRE(groups::as_signed_permutation(act.images[i], p));
            CHECK(p.is_pure_permutation());
            distinct.insert(act.images[i].to_string());
        }
        CHECK(distinct.size() == 4); // the Klein four group
    }
    SUBCASE("sign-twisted group restricted to pair sums is a plain permutation action") {
        FiniteActionGroup s4 = test_support::signed_sn_group(4);
        auto act = groups::restrict_action_to_sublattice(s4, test_support::signed_sn_phat(4));
        std::set<std::string> distinct;
        for (std::size_t i = 0; i < s4.size(); ++i) {
            SignedPermutation p;
            REQUIRE(groups::as_signed_permutation(act.images[i], p));
            CHECK(p.is_pure_permutation());
            distinct.insert(act.images[i].to_string());
        }
        CHECK(distinct.size() == 24); // faithful natural permutation action
    }
    SUBCASE("instability is reported with the offending element") {
        FiniteActionGroup s2 = FiniteActionGroup::close({SignedPermutation({1, 0}, {1, 1})});
        auto unstable = lattice::Sublattice::from_generators(2, {{Int(1), Int(0)}});
        CHECK_THROWS_WITH_AS(groups::restrict_action_to_sublattice(s2, unstable),
                             doctest::Contains("element 1"), validation_error);
    }
}

TEST_CASE("quotient_action") {
    SUBCASE("trivial sublattice keeps the original action") {
        FiniteActionGroup q8 = test_support::q8_group();
        auto q = groups::quotient_action(q8, lattice::Sublattice::zero(8));
        CHECK(q.projection.is_identity());
        for (std::size_t i = 0; i < q8.size(); ++i)
            CHECK(q.action.images[i] == q8.element(i).to_matrix());
    }
    SUBCASE("sign-twisted resolution projects to the signed natural action") {
        FiniteActionGroup s4 = test_support::signed_sn_group(4);
        auto q = groups::quotient_action(s4, test_support::signed_sn_phat(4));
        // in the coset basis [a_i] = class of a_i^+, a transposition acts
        // by the signed permutation a_i -> -a_{sigma(i)}
        lattice::IntegerMatrix b(4, 4);
        for (int i = 0; i < 4; ++i) {
            Vec img = q.projection.col(2 * i); // image of a_i^+
            for (int r = 0; r < 4; ++r) b.at(r, i) = img[r];
        }
        CHECK(abs_int(lattice::determinant(b)) == 1);
        lattice::IntegerMatrix binv = lattice::inverse_unimodular(b);
        // generator 0 is the transposition of the first two letters
        int g0 = s4.generator_indices()[0];
        lattice::IntegerMatrix in_coset_basis = binv * q.action.images[g0] * b;
        lattice::IntegerMatrix expected(4, 4);
        expected.at(1, 0) = -1;
        expected.at(0, 1) = -1;
        expected.at(2, 2) = -1;
        expected.at(3, 3) = -1;
        CHECK(in_coset_basis == expected);
    }
    SUBCASE("quaternion quotient is the monomial rank-4 action") {
        FiniteActionGroup q8 = test_support::q8_group();
        auto q = groups::quotient_action(q8, test_support::q8_phat());
        // coset basis [e], [x], [y], [z]
        lattice::IntegerMatrix b(4, 4);
        int cols[4] = {0, 2, 4, 6};
        for (int i = 0; i < 4; ++i) {
            Vec img = q.projection.col(cols[i]);
            for (int r = 0; r < 4; ++r) b.at(r, i) = img[r];
        }
        CHECK(abs_int(lattice::determinant(b)) == 1);
        lattice::IntegerMatrix binv = lattice::inverse_unimodular(b);
        // i sends [e]->[x], [x]->-[e], [y]->[z], [z]->-[y]
        int gi = q8.generator_indices()[0];
        lattice::IntegerMatrix got = binv * q.action.images[gi] * b;
        lattice::IntegerMatrix expected(4, 4);
        expected.at(1, 0) = 1;
        expected.at(0, 1) = -1;
        expected.at(3, 2) = 1;
        expected.at(2, 3) = -1;
        CHECK(got == expected);
    }
    SUBCASE("torsion quotients are rejected") {
        FiniteActionGroup t = FiniteActionGroup::trivial(2);
        auto doubled = lattice::Sublattice::from_generators(2, {{Int(2), Int(0)}});
        CHECK_THROWS_WITH_AS(groups::quotient_action(t, doubled),
                             doctest::Contains("not a torus quotient"), validation_error);
    }
}

TEST_CASE("subgroup generators regenerate the subgroup") {
    FiniteActionGroup s4 = test_support::plain_sn_group(4);
    for (const auto& h : groups::all_subgroups_up_to_conjugacy(s4)) {
        auto gens = groups::subgroup_generators(s4, h);
        CHECK(groups::subgroup_closure(s4, gens).members == h.members);
        CHECK(gens.size() <= 3);
    }
}
