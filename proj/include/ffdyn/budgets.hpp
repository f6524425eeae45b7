#pragma once

#include <cstddef>

namespace ffdyn {

// Resource caps for iterate composition and orbit stepping.  Work that would
// exceed a cap is not performed; results carry a truncation flag instead of
// throwing, so partial data stays usable.
struct Budgets {
    long max_degree = 10000;              // cap on the x-degree of an iterate
    long max_height = 4096;               // cap on orbit point heights
    std::size_t max_bits = std::size_t(1) << 26; // cap on total coefficient bits
};

} // namespace ffdyn
