#pragma once

#include <cstddef>
#include <string>

#include "ffdyn/errors.hpp"
#include "ffdyn/point.hpp"
#include "ffdyn/selfmap.hpp"

namespace ffdyn {

// Text format for maps and points:
//
//   map P2: [x^2*z, y^3, z^3]
//   map P1: [t*x^2, y^2]
//   point P2: [t, 2, 1]
//   point P1: [t^2/(t-1), 1]
//
// Projective variables are x, y, z, w (the first n+1 of them on P^n, n <= 3);
// t is the function-field parameter.  Products need an explicit '*',
// exponents use '^' with nonnegative integer values, coefficients may be
// integers, fractions, or parenthesized polynomials in t.  Whitespace is
// free-form and '#' starts a comment running to the end of the line.
//
// Parsing canonicalizes: maps get common factors removed and a pinned
// scaling, points get coprime normalized coordinates.  Printing emits a
// canonical text form, so parse(print(parse(s))) == parse(s) and printing is
// idempotent after one round.

// Lexical or structural error; `position` is the byte offset in the input.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& expected);
};

// One coordinate form mixes monomials of different total degrees.
struct NotHomogeneousError : Error {
    explicit NotHomogeneousError(const std::string& msg) : Error(msg) {}
};

// Coordinate forms are homogeneous but of unequal degrees.
struct MixedDegreesError : Error {
    explicit MixedDegreesError(const std::string& msg) : Error(msg) {}
};

// Syntactically valid input that leaves polynomial arithmetic over Q(t)
// (fractional or negative exponents, decimal literals, ...).
struct UnsupportedExtensionError : Error {
    explicit UnsupportedExtensionError(const std::string& msg) : Error(msg) {}
};

enum class StatementKind { Map, Point };

// Reads just the leading keyword ("map" or "point").
StatementKind statement_kind(const std::string& text);

SelfMap parse_map(const std::string& text);
Point parse_point(const std::string& text);

std::string print_map(const SelfMap& f);
std::string print_point(const Point& P);

} // namespace ffdyn
