#include <vector>

#include "doctest.h"
#include "ffdyn/errors.hpp"
#include "ffdyn/rng.hpp"
#include "ffdyn/selfmap.hpp"
#include "oracles.hpp"

using namespace ffdyn;
using namespace ffdyn::testing;

namespace {

UniPoly upoly(const std::vector<long>& asc) {
    UniPoly u;
    for (std::size_t k = 0; k < asc.size(); ++k)
        u = u + UniPoly::monomial(Rational(asc[k]), static_cast<int>(k));
    return u;
}

// Coordinate form from (exponents, dehomogenized coefficient, coeff degree).
struct TermSpec {
    XMono mono;
    std::vector<long> coeff;
    int deg = 0;
};

CoordForm cf(const std::vector<TermSpec>& terms) {
    CoordForm f;
    for (const auto& ts : terms) f.emplace(ts.mono, BinaryForm::from_unipoly(upoly(ts.coeff), ts.deg));
    return f;
}

Point pt(const std::vector<std::vector<long>>& numerators) {
    std::vector<BinaryForm> raw;
    int deg = 0;
    for (const auto& c : numerators) deg = std::max(deg, static_cast<int>(c.size()) - 1);
    for (const auto& c : numerators) raw.push_back(BinaryForm::from_unipoly(upoly(c), deg));
    return Point::normalize(std::move(raw));
}

SelfMap cremona() {
    // (yz : xz : xy)
    return SelfMap::from_forms(
        2, {cf({{{0, 1, 1}, {1}, 0}}), cf({{{1, 0, 1}, {1}, 0}}), cf({{{1, 1, 0}, {1}, 0}})});
}

SelfMap power_example() {
    // (x^2 z : y^3 : z^3)
    return SelfMap::from_forms(
        2, {cf({{{2, 0, 1}, {1}, 0}}), cf({{{0, 3, 0}, {1}, 0}}), cf({{{0, 0, 3}, {1}, 0}})});
}

SelfMap twisted_square() {
    // (t*x^2 : y^2) on P^1
    return SelfMap::from_forms(1, {cf({{{2, 0}, {0, 1}, 1}}), cf({{{0, 2}, {1}, 0}})});
}

} // namespace

TEST_CASE("self-map construction and canonical form") {
    SelfMap sq = SelfMap::from_forms(1, {cf({{{2, 0}, {1}, 0}}), cf({{{0, 2}, {1}, 0}})});
    CHECK(sq.n() == 1);
    CHECK(sq.x_degree() == 2);
    CHECK(sq.t_degree() == 0);
    CHECK(sq.is_monomial());
    CHECK_FALSE(sq.is_identity());
    CHECK(SelfMap::identity(2).is_identity());

    SUBCASE("common monomial factor is divided out") {
        SelfMap m = SelfMap::from_forms(1, {cf({{{1, 1}, {1}, 0}}), cf({{{0, 2}, {1}, 0}})});
        CHECK(m.is_identity());
        CHECK(m.content_removed().x_degree == 1);
    }
    SUBCASE("common coefficient factor is divided out") {
        SelfMap m = SelfMap::from_forms(
            1, {cf({{{2, 0}, {0, 1}, 1}}), cf({{{0, 2}, {0, 1}, 1}})});
        CHECK(m == sq);
        CHECK(m.content_removed().t_degree == 1);
    }
    SUBCASE("coefficients pad to a common t-degree") {
        SelfMap m = twisted_square();
        CHECK(m.x_degree() == 2);
        CHECK(m.t_degree() == 1);
        CHECK(m.form(0).begin()->second == BinaryForm::term(1, 0, Rational(1)));  // t0
        CHECK(m.form(1).begin()->second == BinaryForm::term(1, 1, Rational(1)));  // t1
    }
    SUBCASE("canonical scaling makes the lead coefficient 1") {
        SelfMap m = SelfMap::from_forms(
            1, {cf({{{2, 0}, {3}, 0}}), cf({{{0, 2}, {6}, 0}})});
        CHECK(m.form(0).begin()->second == BinaryForm::constant(Rational(1)));
        CHECK(m.form(1).begin()->second == BinaryForm::constant(Rational(2)));
    }
    SUBCASE("a polynomial common factor is divided out exactly") {
        // both coordinates share (x0 + x1): ((x0+x1)*x0 : (x0+x1)*x1)
        SelfMap m = SelfMap::from_forms(
            1, {cf({{{2, 0}, {1}, 0}, {{1, 1}, {1}, 0}}),
                cf({{{1, 1}, {1}, 0}, {{0, 2}, {1}, 0}})});
        CHECK(m.is_identity());
        CHECK(m.content_removed().x_degree == 1);
    }
    SUBCASE("a common factor mixing x and t is divided out exactly") {
        // shared factor (x0 - t*x1); cofactors x0 and x1
        // (x0^2 - t*x0*x1 : x0*x1 - t*x1^2)
        SelfMap m = SelfMap::from_forms(
            1, {cf({{{2, 0}, {1}, 0}, {{1, 1}, {0, -1}, 1}}),
                cf({{{1, 1}, {1}, 0}, {{0, 2}, {0, -1}, 1}})});
        CHECK(m.is_identity());
        CHECK(m.content_removed().x_degree == 1);
        CHECK(m.content_removed().t_degree == 1);
    }
    SUBCASE("rejects mixed x-degrees") {
        CHECK_THROWS_AS(SelfMap::from_forms(
                            1, {cf({{{2, 0}, {1}, 0}, {{1, 0}, {1}, 0}}), cf({{{0, 2}, {1}, 0}})}),
                        DimensionError);
        CHECK_THROWS_AS(SelfMap::from_forms(
                            1, {cf({{{2, 0}, {1}, 0}}), cf({{{0, 1}, {1}, 0}})}),
                        DimensionError);
    }
    SUBCASE("rejects the zero tuple and bad arity") {
        CHECK_THROWS_AS(SelfMap::from_forms(1, {CoordForm{}, CoordForm{}}), AllZeroError);
        CHECK_THROWS_AS(SelfMap::from_forms(2, {cf({{{2, 0}, {1}, 0}}), cf({{{0, 2}, {1}, 0}})}),
                        DimensionError);
    }
}

TEST_CASE("monomial exponent matrices") {
    MonomialMap cre = MonomialMap::from_matrix({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(cre.degree() == 2);
    SUBCASE("iteration reduces by column minima") {
        MonomialMap sq = cre.after(cre);
        CHECK(sq.degree() == 1);
        CHECK(sq.rows() == std::vector<std::vector<int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(MonomialMap::from_matrix({{1, 0}, {1, 1}}), DimensionError);
        CHECK_THROWS_AS(MonomialMap::from_matrix({{1, 1}, {1, 1}}), DimensionError);
        CHECK_THROWS_AS(MonomialMap::from_matrix({{1, 0, 0}, {0, 1, 0}}), DimensionError);
        CHECK(MonomialMap::from_matrix({{2, 1}, {1, 2}}).rows() ==
              std::vector<std::vector<int>>{{1, 0}, {0, 1}});
    }
    SUBCASE("round trip through a self-map") {
        SelfMap f = SelfMap::from_monomial_map(cre);
        CHECK(f == cremona());
        auto back = f.as_monomial_map();
        REQUIRE(back.has_value());
        CHECK(*back == cre);
        CHECK_FALSE(twisted_square().as_monomial_map().has_value());
    }
}

TEST_CASE("composition") {
    SelfMap sigma = cremona();
    SUBCASE("the quadratic involution composes to the identity") {
        SelfMap sq = compose(sigma, sigma);
        CHECK(sq.is_identity());
        CHECK(sq.content_removed().x_degree == 3);
    }
    SUBCASE("composition with the identity is neutral") {
        SelfMap id = SelfMap::identity(2);
        CHECK(compose(sigma, id) == sigma);
        CHECK(compose(id, sigma) == sigma);
        SelfMap tw = twisted_square();
        CHECK(compose(tw, SelfMap::identity(1)) == tw);
        CHECK(compose(SelfMap::identity(1), tw) == tw);
    }
    SUBCASE("coordinate powers square to bidegree (9, 0)") {
        SelfMap f = power_example();
        SelfMap f2 = compose(f, f);
        CHECK(f2.x_degree() == 9);
        CHECK(f2.t_degree() == 0);
        auto mm = f.as_monomial_map();
        auto mm2 = f2.as_monomial_map();
        REQUIRE(mm.has_value());
        REQUIRE(mm2.has_value());
        CHECK(*mm2 == mm->after(*mm));
    }
    SUBCASE("t-degrees combine as e + d*e under iteration") {
        SelfMap f = twisted_square();
        std::vector<int> ds, es;
        SelfMap it = f;
        for (int m = 1; m <= 4; ++m) {
            ds.push_back(it.x_degree());
            es.push_back(it.t_degree());
            it = compose(f, it);
        }
        CHECK(ds == std::vector<int>{2, 4, 8, 16});
        CHECK(es == std::vector<int>{1, 3, 7, 15});
    }
    SUBCASE("associativity on random maps") {
        Rng rng(2024);
        for (int iter = 0; iter < 8; ++iter) {
            auto rand_map = [&]() {
                while (true) {
                    std::vector<CoordForm> forms(2);
                    for (auto& form : forms)
                        for (int a = 0; a <= 2; ++a) {
                            long c = rng.uniform(-2, 2);
                            if (c == 0) continue;
                            XMono m{a, 2 - a};
                            form.emplace(m, BinaryForm::constant(Rational(c)));
                        }
                    try {
                        return SelfMap::from_forms(1, std::move(forms));
                    } catch (const AllZeroError&) {
                    }
                }
            };
            SelfMap f = rand_map(), g = rand_map(), h = rand_map();
            CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
        }
    }
}

TEST_CASE("evaluation") {
    SelfMap f = power_example();
    SUBCASE("section images divide out the common factor") {
        Point P = pt({{0, 1}, {2}, {1}});  // (t : 2 : 1)
        EvalResult ev = evaluate(f, P);
        REQUIRE_FALSE(ev.indeterminacy_hit());
        CHECK(ev.image->degree() == 2);
        CHECK(ev.cancellation == 1);
        CHECK(*ev.image == pt({{0, 0, 1}, {8}, {1}}));  // (t^2 : 8 : 1)
    }
    SUBCASE("fixed point of the involution") {
        SelfMap sigma = cremona();
        Point P = pt({{1}, {1}, {1}});
        EvalResult ev = evaluate(sigma, P);
        REQUIRE_FALSE(ev.indeterminacy_hit());
        CHECK(*ev.image == P);
        CHECK(ev.cancellation == 0);

        Point Q = pt({{1}, {2}, {3}});
        EvalResult ev2 = evaluate(sigma, Q);
        CHECK(*ev2.image == pt({{6}, {3}, {2}}));
        EvalResult ev3 = evaluate(sigma, *ev2.image);
        CHECK(*ev3.image == Q);
    }
    SUBCASE("a constant point inside the base locus is a hit") {
        SelfMap sigma = cremona();
        EvalResult ev = evaluate(sigma, pt({{1}, {0}, {0}}));
        CHECK(ev.indeterminacy_hit());
    }
    SUBCASE("dimension mismatch throws") {
        CHECK_THROWS_AS(evaluate(f, pt({{0, 1}, {1}})), DimensionError);
    }
    SUBCASE("height obeys the pullback bound with equality off the base locus") {
        // (t*x^2 : y^2) is undefined at (1:0) over t = 0 and at (0:1) over
        // t = infinity; the section (1 : t) passes through both.
        SelfMap g = twisted_square();
        Point through = pt({{1}, {0, 1}});  // (1 : t)
        EvalResult ev = evaluate(g, through);
        CHECK(ev.cancellation == 2);
        CHECK(ev.image->degree() == 2 * 1 + 1 - 2);
        CHECK(meets_indeterminacy(g, through));

        Point off = pt({{2}, {1}});  // constant (2 : 1)
        EvalResult ev2 = evaluate(g, off);
        CHECK(ev2.cancellation == 0);
        CHECK(ev2.image->degree() == 1);  // = d*0 + e
        CHECK_FALSE(meets_indeterminacy(g, off));

        Point gen = pt({{1, 0, 1}, {1}});  // (t^2 + 1 : 1) avoids both fibers
        EvalResult ev3 = evaluate(g, gen);
        CHECK(ev3.cancellation == 0);
        CHECK(ev3.image->degree() == 2 * 2 + 1);
        CHECK_FALSE(meets_indeterminacy(g, gen));
    }
}

TEST_CASE("base-locus membership for sections") {
    SelfMap f = power_example();
    SUBCASE("pinned sections") {
        CHECK(meets_indeterminacy(f, pt({{0, 1}, {2}, {1}})));        // (t:2:1) at t = infinity
        CHECK_FALSE(meets_indeterminacy(f, pt({{1, 1}, {0, 1}, {1}})));  // (t+1 : t : 1)
        CHECK(meets_indeterminacy(f, pt({{0, 1}, {0}, {1}})));        // zero coordinate
        SelfMap sigma = cremona();
        CHECK(meets_indeterminacy(sigma, pt({{0, 1}, {0, 1}, {1}})));    // (t:t:1) hits (0:0:1)
        CHECK_FALSE(meets_indeterminacy(sigma, pt({{1, 1}, {-1, 1}, {0, 1}})));
    }
    SUBCASE("monomial fast path agrees with direct substitution") {
        Rng rng(77);
        auto pool = default_factor_pool();
        int checked = 0;
        for (int iter = 0; iter < 120; ++iter) {
            int n = 1 + static_cast<int>(rng.uniform(0, 1));
            // random monomial self-map, possibly with t in the coefficients
            std::vector<CoordForm> forms(static_cast<std::size_t>(n + 1));
            int d = 1 + static_cast<int>(rng.uniform(0, 2));
            for (auto& form : forms) {
                XMono mono(static_cast<std::size_t>(n + 1), 0);
                for (int k = 0; k < d; ++k)
                    mono[static_cast<std::size_t>(rng.uniform(0, n))]++;
                UniPoly c = UniPoly::constant(Rational(rng.uniform(1, 3)));
                if (rng.chance(0.5))
                    c = c * product_of(pool, random_exponents(rng, pool.size(), 2), Rational(1));
                form.emplace(std::move(mono),
                             BinaryForm::from_unipoly(c, c.degree() + (rng.chance(0.3) ? 1 : 0)));
            }
            SelfMap m = SelfMap::from_forms(n, std::move(forms));
            REQUIRE(m.is_monomial());

            // random point built from pool products (shared roots are likely)
            std::vector<BinaryForm> raw;
            int deg = 2;
            bool nonzero = false;
            for (int j = 0; j <= n; ++j) {
                if (!nonzero && j == n) {
                    raw.push_back(BinaryForm::from_unipoly(UniPoly::one(), deg));
                    break;
                }
                if (rng.chance(0.15)) {
                    raw.push_back(BinaryForm::zero(deg));
                    continue;
                }
                UniPoly u = product_of(pool, random_exponents(rng, pool.size(), deg),
                                       random_small_rational(rng, 3, 2));
                if (u.is_zero() || u.degree() > deg)
                    u = UniPoly::constant(Rational(rng.uniform(1, 5)));
                raw.push_back(BinaryForm::from_unipoly(u, deg));
                nonzero = true;
            }
            Point P = Point::normalize(std::move(raw));

            // independent oracle: expand the substituted sections and take
            // their actual gcd
            BinaryForm g = BinaryForm::zero(0);
            bool started = false, all_zero = true;
            for (int i = 0; i <= n; ++i) {
                const auto& [mono, coeff] = *m.form(i).begin();
                BinaryForm s = coeff;
                for (int j = 0; j <= n; ++j)
                    for (int k = 0; k < mono[static_cast<std::size_t>(j)]; ++k) s = s * P.coord(j);
                if (!s.is_zero()) all_zero = false;
                g = started ? gcd_binaryform(g, s) : s.pivot_normalized();
                started = true;
            }
            bool expected = all_zero || g.is_zero() || g.degree() > 0;
            CHECK(meets_indeterminacy(m, P) == expected);
            ++checked;
        }
        CHECK(checked >= 100);
    }
}

TEST_CASE("composition evaluates like function composition") {
    Rng rng(5150);
    auto rand_map = [&](int n, int d) {
        while (true) {
            std::vector<CoordForm> forms(static_cast<std::size_t>(n + 1));
            for (auto& form : forms) {
                int terms = 1 + static_cast<int>(rng.uniform(0, 1));
                for (int s = 0; s < terms; ++s) {
                    XMono mono(static_cast<std::size_t>(n + 1), 0);
                    for (int k = 0; k < d; ++k)
                        mono[static_cast<std::size_t>(rng.uniform(0, n))]++;
                    long c = rng.uniform(-2, 2);
                    if (c == 0) c = 1;
                    UniPoly u = UniPoly::constant(Rational(c));
                    if (rng.chance(0.3)) u = u * upoly({rng.uniform(1, 2), 1});
                    if (form.find(mono) == form.end())
                        form.emplace(std::move(mono), BinaryForm::from_unipoly(u, u.degree()));
                }
            }
            try {
                return SelfMap::from_forms(n, std::move(forms));
            } catch (const Error&) {
            }
        }
    };
    int agreed = 0;
    for (int iter = 0; iter < 40; ++iter) {
        int n = 1 + static_cast<int>(rng.uniform(0, 1));
        SelfMap f = rand_map(n, 2), g = rand_map(n, 2);
        std::vector<std::vector<long>> coords;
        for (int j = 0; j <= n; ++j)
            coords.push_back({rng.uniform(-3, 3), rng.uniform(0, 2)});
        coords[0] = {1, 1};
        Point P = pt(coords);

        SelfMap fg = compose(f, g);
        EvalResult inner = evaluate(g, P);
        if (inner.indeterminacy_hit()) continue;
        EvalResult outer = evaluate(f, *inner.image);
        EvalResult direct = evaluate(fg, P);
        if (outer.indeterminacy_hit()) {
            // composite forms vanish identically on the section too
            CHECK(direct.indeterminacy_hit());
            continue;
        }
        REQUIRE_FALSE(direct.indeterminacy_hit());
        CHECK(*direct.image == *outer.image);
        ++agreed;
    }
    CHECK(agreed >= 20);
}
