#include <vector>

#include "doctest.h"
#include "ffdyn/heights.hpp"
#include "ffdyn/rng.hpp"
#include "oracles.hpp"

using namespace ffdyn;
using namespace ffdyn::testing;

TEST_CASE("height pins") {
    auto pt = [](const std::vector<std::vector<long>>& cs) {
        std::vector<BinaryForm> raw;
        int deg = 0;
        for (const auto& c : cs) deg = std::max(deg, static_cast<int>(c.size()) - 1);
        for (const auto& c : cs) {
            UniPoly u;
            for (std::size_t k = 0; k < c.size(); ++k)
                u = u + UniPoly::monomial(Rational(c[k]), static_cast<int>(k));
            raw.push_back(BinaryForm::from_unipoly(u, deg));
        }
        return Point::normalize(std::move(raw));
    };

    Point constant = pt({{5}, {7}});
    CHECK(height_degree(constant) == 0);
    CHECK(height_plus(constant) == 1);
    auto hv = height_valuation(constant);
    CHECK(hv.split);
    CHECK(hv.value == 0);

    Point line = pt({{0, 1}, {1}});  // (t : 1)
    CHECK(height_degree(line) == 1);
    CHECK(height_plus(line) == 1);
    CHECK(height_valuation(line).value == 1);

    Point quad = pt({{0, 0, 1}, {8}, {1}});  // (t^2 : 8 : 1)
    CHECK(height_degree(quad) == 2);
    CHECK(height_plus(quad) == 2);
    CHECK(height_valuation(quad).value == 2);

    // (t^2 - 1 : t) -- zeros and poles spread over t = 1, -1, 0, infinity
    Point spread = pt({{-1, 0, 1}, {0, 1}});
    CHECK(height_degree(spread) == 2);
    auto sv = height_valuation(spread);
    CHECK(sv.split);
    CHECK(sv.value == 2);

    // an irreducible quadratic section is outside the split regime
    Point nonsplit = pt({{1, 0, 1}, {1}});  // (t^2 + 1 : 1)
    CHECK(height_degree(nonsplit) == 2);
    CHECK_FALSE(height_valuation(nonsplit).split);
}

TEST_CASE("local and global height computations agree on split points") {
    Rng rng(40318);
    for (int n = 1; n <= 3; ++n) {
        int matched = 0;
        for (int iter = 0; iter < 520; ++iter) {
            Point P = split_point(rng, n, 4);
            ValuationHeight hv = height_valuation(P);
            REQUIRE(hv.split);
            CHECK(hv.value == height_degree(P));
            CHECK(height_plus(P) == std::max(height_degree(P), 1));
            ++matched;
        }
        CHECK(matched == 520);
    }
}
