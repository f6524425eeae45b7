#include "doctest.h"
#include "oracles.hpp"
#include "dsl_corpus.hpp"

#include "ffdyn/dsl.hpp"
#include "ffdyn/point.hpp"
#include "ffdyn/selfmap.hpp"

#include <string>

using namespace ffdyn;
using namespace ffdyn::testing;

TEST_CASE("map statements parse to canonical self-maps") {
    SelfMap power = parse_map("map P2: [x^2*z, y^3, z^3]");
    CHECK(power == std_power_map());
    CHECK(power.x_degree() == 3);
    CHECK(power.t_degree() == 0);

    SelfMap twisted = parse_map("map P1: [t*x^2, y^2]");
    CHECK(twisted == std_twisted_square());
    CHECK(twisted.x_degree() == 2);
    CHECK(twisted.t_degree() == 1);

    CHECK(parse_map("map P2: [y*z, x*z, x*y]") == std_cremona());

    // Denominators are cleared jointly, so scaling is canonical.
    CHECK(parse_map("map P1: [x^2/2, y^2/3]") ==
          parse_map("map P1: [3*x^2, 2*y^2]"));
    CHECK(parse_map("map P1: [x^2/(t-1), y^2]") ==
          parse_map("map P1: [x^2, (t-1)*y^2]"));

    CHECK(parse_map("map P2: [(t^2+1)*x^2*z, t*y^3, z^3]").t_degree() == 2);

    // Expressions expand: powers of sums, nested parentheses.
    CHECK(parse_map("map P1: [(x + y)^2, x*y]") ==
          parse_map("map P1: [x^2 + 2*x*y + y^2, x*y]"));
    CHECK(parse_map("map P1: [((2*t - 1) - (t - 1))*x^2, y^2]") ==
          parse_map("map P1: [t*x^2, y^2]"));

    CHECK(statement_kind("map P1: [x, y]") == StatementKind::Map);
    CHECK(statement_kind("  # leading comment\n point P1: [t, 1]") ==
          StatementKind::Point);
}

TEST_CASE("point statements parse to normalized points") {
    Point p = parse_point("point P2: [t, 2, 1]");
    CHECK(p.degree() == 1);
    CHECK(p == point_from_polys({{0, 1}, {2}, {1}}));

    CHECK(parse_point("point P1: [t^2/(t-1), 1]").degree() == 2);

    // Scaling of the whole coordinate vector is quotiented away.
    CHECK(parse_point("point P1: [-t/2, 1]") ==
          parse_point("point P1: [t, -2]"));
    CHECK(parse_point("point P1: [t^2 + t, t]") ==
          parse_point("point P1: [t + 1, 1]"));
    CHECK(parse_point("point P2: [-1, -t, -t^2]") ==
          parse_point("point P2: [1, t, t^2]"));

    // Denominators in t are cleared into the projective degree.
    CHECK(parse_point("point P2: [t/3, 1/t, 1]").degree() == 2);
    CHECK(parse_point("point P1: [7, 11]").degree() == 0);
}

TEST_CASE("statement errors carry type and position") {
    CHECK_THROWS_AS(parse_map("map P2: [x^2, y^3, z^3]"), MixedDegreesError);
    CHECK_THROWS_AS(parse_map("map P1: [x^2 + x, y^2]"), NotHomogeneousError);
    CHECK_THROWS_AS(parse_map("map P1: [0, 0]"), AllZeroError);
    CHECK_THROWS_AS(parse_point("point P2: [0, 0, 0]"), AllZeroError);

    bool caught = false;
    try {
        parse_map("map P1: [x^2 y^2]");
    } catch (const SyntaxError& e) {
        caught = true;
        // 0-based offset of the 'y' where ',' or ']' was required.
        CHECK(e.position == 13);
    }
    CHECK(caught);

    CHECK_THROWS_AS(parse_map("map P1: [x^(1/2), y]"), UnsupportedExtensionError);
    CHECK_THROWS_AS(parse_map("map P1: [x^(-2), y^2]"), UnsupportedExtensionError);
    CHECK_THROWS_AS(parse_point("point P1: [1.5, 1]"), UnsupportedExtensionError);
    CHECK_THROWS_AS(parse_map("map P1: [x^2/y, x^2]"), UnsupportedExtensionError);

    CHECK_THROWS_AS(parse_map("map P5: [x, y]"), SyntaxError);     // dimension
    CHECK_THROWS_AS(parse_map("map P1: [x, y], rest"), SyntaxError); // trailing input
    CHECK_THROWS_AS(parse_map("map P1: [x, y, x]"), SyntaxError);  // coordinate count
    CHECK_THROWS_AS(parse_map("map P1: [x]"), SyntaxError);
    CHECK_THROWS_AS(parse_map("frob P1: [x, y]"), SyntaxError);    // keyword
    CHECK_THROWS_AS(parse_point("point P1: [q, 1]"), SyntaxError); // unknown symbol
    CHECK_THROWS_AS(parse_map("map P1: [z, y]"), SyntaxError);     // var beyond dimension
    CHECK_THROWS_AS(parse_map("map P1: [x*y/0, y^2]"), SyntaxError);
    CHECK_THROWS_AS(parse_point("map P1: [x, y]"), SyntaxError);   // kind mismatch
    CHECK_THROWS_AS(parse_map("point P1: [t, 1]"), SyntaxError);

    CHECK_THROWS_AS(parse_map("map P1: [x^20000, y^20000]"), ResourceLimitError);
}

TEST_CASE("comments and whitespace do not affect parsing") {
    CHECK(parse_map("map  P1 :  [ t * x ^ 2 , y ^ 2 ]") == std_twisted_square());
    CHECK(parse_map("map P1: [t*x^2, # inner comment\n y^2]") ==
          std_twisted_square());
    CHECK(parse_point("point\n  P2: [t,\n       2, 1] # across lines") ==
          parse_point("point P2: [t, 2, 1]"));
}

TEST_CASE("printing is canonical and parseable") {
    CHECK(print_map(std_power_map()) == "map P2: [x^2*z, y^3, z^3]");
    CHECK(print_map(std_twisted_square()) == "map P1: [t*x^2, y^2]");
    CHECK(print_map(std_cremona()) == "map P2: [y*z, x*z, x*y]");

    CHECK(print_point(parse_point("point P2: [t, 2, 1]")) ==
          "point P2: [t, 2, 1]");
    CHECK(print_point(parse_point("point P1: [t^2/(t-1), 1]")) ==
          "point P1: [t^2, t - 1]");

    // Terms print in a fixed monomial order with sign-aware joining.
    CHECK(print_map(parse_map("map P1: [y^2 + x^2 + t*x*y, x*y]")) ==
          "map P1: [x^2 + t*x*y + y^2, x*y]");
    CHECK(print_map(parse_map("map P1: [x^2 - y^2, x*y]")) ==
          "map P1: [x^2 - y^2, x*y]");
    CHECK(print_map(parse_map("map P2: [x^2, 0, z^2]")) ==
          "map P2: [x^2, 0, z^2]");
}

TEST_CASE("round trips are stable across the corpus") {
    const auto& corpus = dsl_corpus();
    CHECK(corpus.size() == 50);
    for (const std::string& s : corpus) {
        CAPTURE(s);
        if (statement_kind(s) == StatementKind::Map) {
            SelfMap f = parse_map(s);
            std::string text = print_map(f);
            CAPTURE(text);
            SelfMap g = parse_map(text);
            CHECK(g == f);
            CHECK(print_map(g) == text);
        } else {
            Point p = parse_point(s);
            std::string text = print_point(p);
            CAPTURE(text);
            Point q = parse_point(text);
            CHECK(q == p);
            CHECK(print_point(q) == text);
        }
    }
}
