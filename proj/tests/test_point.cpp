#include "doctest.h"

#include "ffdyn/errors.hpp"
#include "ffdyn/point.hpp"
#include "ffdyn/rng.hpp"

#include "oracles.hpp"

using namespace ffdyn;

namespace {

UniPoly upoly(std::vector<long> asc) {
    std::vector<Rational> c;
    for (long a : asc) c.emplace_back(a);
    return UniPoly(std::move(c));
}

RationalFunction rf(std::vector<long> num, std::vector<long> den = {1}) {
    return RationalFunction(upoly(std::move(num)), upoly(std::move(den)));
}

} // namespace

TEST_CASE("point normalization") {
    // common factor t1 divides out
    Point p = Point::normalize({BinaryForm::term(2, 1, Rational(1)),   // t0 t1
                                BinaryForm::term(2, 2, Rational(1))}); // t1^2
    CHECK(p.degree() == 1);
    CHECK(p.coord(0) == BinaryForm::term(1, 0, Rational(1)));
    CHECK(p.coord(1) == BinaryForm::term(1, 1, Rational(1)));

    // already coprime: unchanged
    Point q = Point::normalize({BinaryForm::term(2, 0, Rational(1)),
                                BinaryForm::term(2, 2, Rational(1))});
    CHECK(q.degree() == 2);
    CHECK(q.coord(0) == BinaryForm::term(2, 0, Rational(1)));

    // scalar scaling lands pivot coefficient 1
    Point r = Point::normalize({BinaryForm::term(1, 0, Rational(3)),
                                BinaryForm::term(1, 1, Rational(3))});
    CHECK(r.coord(0) == BinaryForm::term(1, 0, Rational(1)));
    CHECK(r.coord(1) == BinaryForm::term(1, 1, Rational(1)));

    CHECK_THROWS_AS(Point::normalize({BinaryForm::zero(1), BinaryForm::zero(1)}), AllZeroError);
    CHECK_THROWS_AS(Point::normalize({BinaryForm::zero(1), BinaryForm::term(2, 0, Rational(1))}),
                    DimensionError);
    CHECK_THROWS_AS(Point::normalize({BinaryForm::term(1, 0, Rational(1))}), DimensionError);
}

TEST_CASE("point from rational functions") {
    // (t, 2, 1) -> (t0 : 2 t1 : t1)
    Point p = Point::from_rational_functions({rf({0, 1}), rf({2}), rf({1})});
    CHECK(p.degree() == 1);
    CHECK(p.coord(0) == BinaryForm::term(1, 0, Rational(1)));
    CHECK(p.coord(1) == BinaryForm::term(1, 1, Rational(2)));
    CHECK(p.coord(2) == BinaryForm::term(1, 1, Rational(1)));
    CHECK(!p.is_constant());

    // (t^2/(t-1), 1) -> (t0^2 : t1 (t0 - t1))
    Point q = Point::from_rational_functions({rf({0, 0, 1}, {-1, 1}), rf({1})});
    CHECK(q.degree() == 2);
    CHECK(q.coord(0) == BinaryForm::term(2, 0, Rational(1)));
    CHECK(q.coord(1) == BinaryForm::term(2, 1, Rational(1)) + BinaryForm::term(2, 2, Rational(-1)));

    // constants give a height-zero point
    Point c = Point::from_rational_functions({rf({5}), rf({7}), rf({1})});
    CHECK(c.degree() == 0);
    CHECK(c.is_constant());
    CHECK(c.coord(0) == BinaryForm::constant(Rational(1)));
    CHECK(c.coord(1) == BinaryForm::constant(make_rational(7, 5)));

    // zero coordinates are allowed
    Point z = Point::from_rational_functions({RationalFunction(), rf({0, 1}), rf({1})});
    CHECK(z.degree() == 1);
    CHECK(z.coord(0).is_zero());

    CHECK_THROWS_AS(Point::from_rational_functions({RationalFunction(), RationalFunction()}),
                    AllZeroError);
}

TEST_CASE("rational function round trip and representation invariance") {
    Rng rng(0xbead5u);
    for (int iter = 0; iter < 100; ++iter) {
        int n = 1 + static_cast<int>(rng.uniform(0, 2));
        int deg = static_cast<int>(rng.uniform(0, 4));
        std::vector<BinaryForm> raw;
        bool some = false;
        for (int i = 0; i <= n; ++i) {
            BinaryForm f = BinaryForm::zero(deg);
            for (int j = 0; j <= deg; ++j) {
                if (rng.chance(0.35)) continue;
                long c = static_cast<long>(rng.uniform(-9, 9));
                if (c == 0) c = 2;
                f = f + BinaryForm::term(deg, j, Rational(c));
            }
            if (!f.is_zero()) some = true;
            raw.push_back(f);
        }
        if (!some) raw[0] = BinaryForm::term(deg, 0, Rational(1));
        Point p = Point::normalize(raw);

        // idempotence
        CHECK(Point::normalize(p.coords()) == p);

        // invariance under a common nonzero multiple
        BinaryForm m = (BinaryForm::term(1, 0, Rational(1)) +
                        BinaryForm::term(1, 1, Rational(2))) *
                       make_rational(3, 7);
        std::vector<BinaryForm> scaled;
        for (const auto& c : p.coords()) scaled.push_back(c * m);
        CHECK(Point::normalize(scaled) == p);

        // round trip through affine coordinates
        CHECK(Point::from_rational_functions(p.to_rational_functions()) == p);
    }
}
