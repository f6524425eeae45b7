#include "ffdyn/heights.hpp"

#include <algorithm>
#include <set>

namespace ffdyn {

int height_degree(const Point& P) { return P.degree(); }

int height_plus(const Point& P) { return std::max(P.degree(), 1); }

ValuationHeight height_valuation(const Point& P) {
    std::vector<RationalFunction> fs = P.to_rational_functions();

    // Candidate places: roots of every numerator and denominator, plus the
    // place at infinity.  Everywhere else all valuations vanish.
    std::set<Rational> finite;
    for (const auto& f : fs) {
        if (f.is_zero()) continue;
        for (const UniPoly* part : {&f.num(), &f.den()}) {
            if (part->is_constant()) continue;
            SplitResult s = split_linear_places(*part);
            if (!s.split()) return {};
            for (const auto& [root, mult] : s.roots) {
                (void)mult;
                finite.insert(root);
            }
        }
    }

    std::vector<Place> places;
    places.reserve(finite.size() + 1);
    for (const auto& a : finite) places.push_back(Place::linear(a));
    places.push_back(Place::infinity());

    long total = 0;
    for (const Place& p : places) {
        bool any = false;
        long lo = 0;
        for (const auto& f : fs) {
            if (f.is_zero()) continue;
            long v = valuation(f, p);
            if (!any || v < lo) lo = v;
            any = true;
        }
        total -= lo;
    }
    return {total, true};
}

} // namespace ffdyn
