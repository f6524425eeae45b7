#pragma once

#include "ffdyn/point.hpp"
#include "ffdyn/valuation.hpp"

namespace ffdyn {

// Height of a point in section normal form: the common degree of its coprime
// coordinate sections.  Zero exactly for constant points.
int height_degree(const Point& P);

// max(height, 1); the variant used in ratio statistics.
int height_plus(const Point& P);

// The same height computed as a sum of local contributions
//     sum_p  -min_i v_p(f_i)
// over the degree-one places p of the t-line, where the f_i are affine
// coordinates of the point.  Only evaluable when every coordinate section
// splits into linear factors over Q: `split` reports that, and `value` is
// meaningless when it is false.
struct ValuationHeight {
    long value = 0;
    bool split = false;
};
ValuationHeight height_valuation(const Point& P);

} // namespace ffdyn
