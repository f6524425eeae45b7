#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ffdyn/rational.hpp"

namespace ffdyn {

// Prime factorization of |n|, n != 0, as (prime, exponent) pairs with primes
// ascending. Trial division over a small wheel, then Miller-Rabin plus
// Pollard-Brent rho on what remains. Desk scale: inputs are coefficient-sized,
// not cryptographic.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

// All positive divisors of |n| (ascending). Throws ResourceLimitError when the
// divisor count would exceed `cap` — callers must not silently miss a divisor.
std::vector<Integer> positive_divisors(const Integer& n, std::size_t cap);

} // namespace ffdyn
