#pragma once

// Statement corpus for round-trip testing: every entry parses, prints
// canonically, and re-parses to the same value.  Shared by the unit tests
// and the acceptance suite.

#include <string>
#include <vector>

namespace ffdyn::testing {

inline const std::vector<std::string>& dsl_corpus() {
    static const std::vector<std::string> corpus = {
        // maps
        "map P2: [x^2*z, y^3, z^3]",
        "map P1: [t*x^2, y^2]",
        "map P2: [y*z, x*z, x*y]",
        "map P1: [x^2 + y^2, x*y]",
        "map P1: [x^2 - y^2, 2*x*y]",
        "map P2: [x^2 + y*z, y^2 - x*z, z^2]",
        "map P1: [(t^2+1)*x^2, y^2]",
        "map P1: [t*x^2 + y^2, (t-1)*x*y]",
        "map P2: [(t+2)*x^2*y, t*y^3, z^3 - x*y*z]",
        "map P3: [y*z*w, x*z*w, x*y*w, x*y*z]",
        "map P3: [x^2, y^2, z^2, w^2]",
        "map P1: [x^2/2, y^2/3]",
        "map P1: [x^2/(t-1), y^2]",
        "map P2: [x^2, 0, z^2]",
        "map P1: [3/2*x^2 + 1/2*y^2, x*y]",
        "map P2: [x*y + y^2, x^2 + x*y, z^2]",
        "map P1: [-x^2, y^2]",
        "map P2:[x^3,y^3,z^3]",
        "map  P1 :  [ t * x ^ 2 , y ^ 2 ]",
        "map P1: [x^2 + t*x*y + y^2, x*y] # a commented map",
        "map P2: [(t^2 + 2*t + 3)*x^2, (1/2)*y^2, z^2]",
        "map P1: [(x + y)^2, x*y]",
        "map P2: [2*x^2 - 3*y^2 + z^2, x*y, y*z]",
        "map P1: [t^3*x^2, (t+1)*y^2]",
        // points
        "point P2: [t, 2, 1]",
        "point P1: [t^2/(t-1), 1]",
        "point P1: [t, 1]",
        "point P2: [t^2 - 1, t, 1]",
        "point P3: [t, t^2, t^3, 1]",
        "point P1: [1/2, 1]",
        "point P1: [-t/2, 1]",
        "point P2: [0, t, 1]",
        "point P1: [t^8 + t + 3, 1]",
        "point P2: [(t+1)*(t-1), t^2, 2]",
        "point P1: [(t+1)^2/(t-2), 3]",
        "point P2: [t/3, 1/t, 1]",
        "point P1: [t + 1/2, 1]",
        "point P2: [2/3, -4/5, 1]",
        "point P1: [t^2 + t, t]",
        "point P2: [t, 2, 1] # orbit start",
        "point\n  P2: [t,\n       2, 1] # across lines",
        "point P1: [(t^2 + 1)/(t^2 - 1), 1]",
        "point P3: [1, t, t^2, t^3 - t]",
        "point P2: [-1, -t, -t^2]",
        "point P1: [0, 5]",
        "point P1: [7, 11]",
        "point P2: [t^4/(t^2+1), t, 1]",
        "point P3: [t, 0, 0, 1]",
        "point P1: [+t, +1]",
        "point P2: [1/2*t + 1/3, t^2, 1]",
    };
    return corpus;
}

} // namespace ffdyn::testing
