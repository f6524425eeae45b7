#include "ffdyn/degree_dynamics.hpp"

#include <vector>

#include "doctest.h"
#include "ffdyn/errors.hpp"
#include "ffdyn/rng.hpp"
#include "oracles.hpp"

using namespace ffdyn;
using namespace ffdyn::testing;

namespace {

MonomialMap random_monomial_matrix(Rng& rng, int n, int max_degree) {
    for (;;) {
        int d = static_cast<int>(rng.uniform(1, max_degree));
        std::vector<std::vector<int>> rows(static_cast<std::size_t>(n) + 1,
                                           std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
        for (auto& row : rows)
            for (int k = 0; k < d; ++k)
                row[static_cast<std::size_t>(rng.uniform(0, n))]++;
        try {
            return MonomialMap::from_matrix(rows);
        } catch (const Error&) {
            // all rows collapsed onto a common column; try again
        }
    }
}

DegreeSequence manual_sequence(std::vector<long> d) {
    DegreeSequence seq;
    seq.e.assign(d.size(), 0);
    seq.exact.assign(d.size(), true);
    seq.d = std::move(d);
    return seq;
}

} // namespace

TEST_CASE("iterate degree sequences match hand-computed examples") {
    SUBCASE("involution degrees alternate 2,1 under generic composition") {
        DegreeSequence seq = degree_sequence(std_cremona(), 8);
        CHECK(seq.d == std::vector<long>{2, 1, 2, 1, 2, 1, 2, 1});
        CHECK(seq.e == std::vector<long>(8, 0));
        CHECK_FALSE(seq.truncated);
        for (bool flag : seq.exact) CHECK(flag);
    }
    SUBCASE("coordinate power map grows as 3^m") {
        DegreeSequence seq = degree_sequence(std_power_map(), 4);
        CHECK(seq.d == std::vector<long>{3, 9, 27, 81});
        CHECK(seq.e == std::vector<long>(4, 0));
    }
    SUBCASE("coefficient degrees accumulate for the twisted square") {
        DegreeSequence seq = degree_sequence(std_twisted_square(), 3);
        CHECK(seq.d == std::vector<long>{2, 4, 8});
        CHECK(seq.e == std::vector<long>{1, 3, 7});
    }
    SUBCASE("identity stays at degree 1") {
        DegreeSequence seq = degree_sequence(SelfMap::identity(2), 5);
        CHECK(seq.d == std::vector<long>(5, 1));
    }
    SUBCASE("a shared iterate table serves growing prefixes consistently") {
        IterateTable table(std_cremona());
        DegreeSequence four = degree_sequence(table, 4);
        DegreeSequence eight = degree_sequence(table, 8);
        CHECK(four.d == std::vector<long>(eight.d.begin(), eight.d.begin() + 4));
        CHECK(table.computed_to() >= 8);
    }
}

TEST_CASE("monomial degree sequence agrees with generic composition") {
    SUBCASE("involution exponent matrix") {
        MonomialMap b = MonomialMap::from_matrix({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
        DegreeSequence fast = monomial_degree_sequence(b, 8);
        CHECK(fast.d == std::vector<long>{2, 1, 2, 1, 2, 1, 2, 1});
        DegreeSequence generic = degree_sequence(std_cremona(), 8);
        CHECK(fast.d == generic.d);
    }
    SUBCASE("random exponent matrices, all ambient dimensions up to 3") {
        Rng rng(0xdeca7);
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 12; ++trial) {
                MonomialMap b = random_monomial_matrix(rng, n, 3);
                DegreeSequence fast = monomial_degree_sequence(b, 6);
                DegreeSequence generic = degree_sequence(SelfMap::from_monomial_map(b), 6);
                REQUIRE(fast.d.size() == generic.d.size());
                CHECK(fast.d == generic.d);
                CHECK(generic.e == std::vector<long>(generic.e.size(), 0));
            }
        }
    }
    SUBCASE("non-dominant maps truncate at the collapse, on both paths") {
        // (x : x : y) squares to (x : x : x), a constant map
        MonomialMap b = MonomialMap::from_matrix({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}});
        DegreeSequence fast = monomial_degree_sequence(b, 5);
        CHECK(fast.d == std::vector<long>{1});
        CHECK(fast.truncated);
        CHECK(fast.truncated_reason.find("constant") != std::string::npos);
        DegreeSequence generic = degree_sequence(SelfMap::from_monomial_map(b), 5);
        CHECK(generic.d == fast.d);
        CHECK(generic.truncated);
    }
    SUBCASE("permutation matrices give the all-ones sequence") {
        MonomialMap b = MonomialMap::from_matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
        CHECK(monomial_degree_sequence(b, 6).d == std::vector<long>(6, 1));
    }
}

TEST_CASE("degree sequences are submultiplicative") {
    CHECK(is_submultiplicative(degree_sequence(std_cremona(), 8)));
    CHECK(is_submultiplicative(degree_sequence(std_power_map(), 4)));
    CHECK(is_submultiplicative(degree_sequence(std_twisted_square(), 4)));
    Rng rng(0x5ab5e9);
    for (int trial = 0; trial < 20; ++trial) {
        MonomialMap b = random_monomial_matrix(rng, 2, 3);
        CHECK(is_submultiplicative(monomial_degree_sequence(b, 8)));
    }
    // sanity: the checker itself can fail
    CHECK_FALSE(is_submultiplicative(manual_sequence({2, 5})));
}

TEST_CASE("dynamical degree estimates") {
    SUBCASE("geometric sequences certify their ratio") {
        DegreeEstimate est = delta_estimate(degree_sequence(std_power_map(), 4));
        REQUIRE(est.exact.has_value());
        CHECK(*est.exact == Rational(3));
        CHECK(est.method == "geometric");
        CHECK(est.final == doctest::Approx(3.0));
        CHECK(est.window_limsup == doctest::Approx(3.0));
    }
    SUBCASE("periodic sequences certify the value 1") {
        DegreeEstimate est = delta_estimate(degree_sequence(std_cremona(), 6));
        REQUIRE(est.exact.has_value());
        CHECK(*est.exact == Rational(1));
        CHECK(est.method == "periodic");
        CHECK(est.final == doctest::Approx(1.0));
    }
    SUBCASE("single-entry sequences") {
        DegreeEstimate one = delta_estimate(manual_sequence({1}));
        REQUIRE(one.exact.has_value());
        CHECK(*one.exact == Rational(1));
        DegreeEstimate three = delta_estimate(manual_sequence({3}));
        CHECK_FALSE(three.exact.has_value());
        CHECK(three.final == doctest::Approx(3.0));
    }
    SUBCASE("estimates never fall below 1") {
        DegreeEstimate est = delta_estimate(manual_sequence({9, 3, 1}));
        CHECK_FALSE(est.exact.has_value());
        CHECK(est.final >= 1.0);
        CHECK(est.window_limsup >= 1.0);
        CHECK(est.window_liminf >= 1.0);
    }
    SUBCASE("window statistics cover the trailing half of the ratio series") {
        DegreeEstimate est = delta_estimate(manual_sequence({1, 4, 13, 40, 121, 364}));
        REQUIRE(est.ratios.size() == 5);
        // trailing half = last two ratios: 121/40 and 364/121
        CHECK(est.window_limsup == doctest::Approx(121.0 / 40.0));
        CHECK(est.window_liminf == doctest::Approx(364.0 / 121.0));
        CHECK(est.final == doctest::Approx(364.0 / 121.0));
        CHECK_FALSE(est.exact.has_value());
    }
    SUBCASE("twisted square certifies 2 from its x-degrees") {
        DegreeEstimate est = delta_estimate(degree_sequence(std_twisted_square(), 3));
        REQUIRE(est.exact.has_value());
        CHECK(*est.exact == Rational(2));
    }
}

TEST_CASE("degree sequence is invariant under coordinate permutation") {
    // conjugate f by the cyclic coordinate permutation sigma
    SelfMap sigma = SelfMap::from_monomial_map(
        MonomialMap::from_matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    SelfMap sigma_inv = SelfMap::from_monomial_map(
        MonomialMap::from_matrix({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
    CHECK(compose(sigma, sigma_inv).is_identity());

    for (const SelfMap& f : {std_cremona(), std_power_map()}) {
        SelfMap g = compose(sigma, compose(f, sigma_inv));
        DegreeSequence sf = degree_sequence(f, 5);
        DegreeSequence sg = degree_sequence(g, 5);
        CHECK(sf.d == sg.d);
        CHECK(sf.e == sg.e);
        DegreeEstimate ef = delta_estimate(sf);
        DegreeEstimate eg = delta_estimate(sg);
        CHECK(ef.exact == eg.exact);
        CHECK(ef.final == doctest::Approx(eg.final));
    }
}

TEST_CASE("degree budgets truncate sequences in-band") {
    SUBCASE("monomial iterates stop once past the degree cap") {
        Budgets b;
        b.max_degree = 10000;
        DegreeSequence seq = degree_sequence(std_power_map(), 12, b);
        CHECK(seq.d == std::vector<long>{3, 9, 27, 81, 243, 729, 2187, 6561});
        CHECK(seq.truncated);
        CHECK_FALSE(seq.truncated_reason.empty());
    }
    SUBCASE("dense maps stop on the projected degree") {
        // x -> (x^2 + y^2 : y^2): projected degree 8 exceeds a cap of 5
        BinaryForm one = BinaryForm::constant(Rational(1));
        CoordForm f0 = mono_form({2, 0}, one);
        f0[{0, 2}] = one;
        SelfMap f = SelfMap::from_forms(1, {f0, mono_form({0, 2}, one)});
        Budgets b;
        b.max_degree = 5;
        DegreeSequence seq = degree_sequence(f, 4, b);
        CHECK(seq.d == std::vector<long>{2, 4});
        CHECK(seq.truncated);
    }
    SUBCASE("coefficient bit budgets stop iteration") {
        // ((t+2) x^2 : y^2): iterate coefficients are (t+2)^(2^m - 1), whose
        // integer entries double in bit-size every step
        BinaryForm t_plus_2 = BinaryForm::from_unipoly(poly_asc({2, 1}), 1);
        SelfMap f = SelfMap::from_forms(
            1, {mono_form({2, 0}, t_plus_2),
                mono_form({0, 2}, BinaryForm::constant(Rational(1)))});
        Budgets b;
        b.max_bits = 16;
        DegreeSequence seq = degree_sequence(f, 64, b);
        CHECK(seq.truncated);
        CHECK(seq.truncated_reason.find("coefficient") != std::string::npos);
        CHECK(seq.d.size() >= 1);
        CHECK(seq.d.size() <= 4);
    }
}
