#pragma once

#include <vector>

#include "ffdyn/rational.hpp"

namespace ffdyn {

// Convolution c[k] = sum_{i+j=k} a[i]*b[j] of dense integer coefficient
// vectors, computed by packing each vector into a single large integer with
// limb-aligned digits and multiplying once, so GMP's subquadratic kernels do
// the work.  Signs are handled by splitting each vector into positive and
// negative parts (four nonnegative products).  Inputs may contain zeros;
// both must be nonempty.
std::vector<Integer> convolve_integer(const std::vector<Integer>& a,
                                      const std::vector<Integer>& b);

} // namespace ffdyn
