#pragma once

#include <stdexcept>
#include <string>

namespace ffdyn {

// Base class for all library errors. Recoverable conditions that carry data
// (NotSplit, IndeterminacyHit, budget truncation) are returned in-band by the
// operations that produce them; exceptions are reserved for contract
// violations and hard resource failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Valuation of the zero function (undefined).
struct ZeroInputError : Error {
    explicit ZeroInputError(const std::string& msg) : Error(msg) {}
};

// A tuple that must have at least one nonzero entry was all zero.
struct AllZeroError : Error {
    explicit AllZeroError(const std::string& msg) : Error(msg) {}
};

// Mismatched ambient dimension or coordinate count.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Rejection sampling exceeded its attempt bound.
struct SamplingExhaustedError : Error {
    explicit SamplingExhaustedError(const std::string& msg) : Error(msg) {}
};

// A hard cap (candidate enumeration, prime supply) was exceeded; distinct
// from soft degree/bit budgets, which truncate results in-band.
struct ResourceLimitError : Error {
    explicit ResourceLimitError(const std::string& msg) : Error(msg) {}
};

// A series needs at least two entries to estimate a growth rate.
struct TooShortError : Error {
    explicit TooShortError(const std::string& msg) : Error(msg) {}
};

// The density check needs at least two points.
struct TooFewPointsError : Error {
    explicit TooFewPointsError(const std::string& msg) : Error(msg) {}
};

} // namespace ffdyn
