#pragma once

#include <string>
#include <vector>

#include "ffdyn/unipoly.hpp"

namespace ffdyn {

// A degree-one place of the projective t-line over Q: either the finite place
// t = a or the place at infinity.
struct Place {
    enum class Kind { Linear, Infinity };
    Kind kind = Kind::Infinity;
    Rational a; // meaningful only for Linear

    static Place linear(const Rational& value) { return Place{Kind::Linear, value}; }
    static Place infinity() { return Place{Kind::Infinity, Rational(0)}; }

    bool operator==(const Place& o) const {
        if (kind != o.kind) return false;
        return kind == Kind::Infinity || a == o.a;
    }
    bool operator<(const Place& o) const {
        if (kind != o.kind) return kind == Place::Kind::Linear; // finite before infinity
        if (kind == Kind::Infinity) return false;
        return a < o.a;
    }
    std::string to_string() const;
};

// Reduced fraction of univariate polynomials: denominator monic and nonzero,
// numerator and denominator coprime, zero represented as 0/1.
class RationalFunction {
  public:
    RationalFunction() : num_(UniPoly::zero()), den_(UniPoly::one()) {}
    RationalFunction(UniPoly num, UniPoly den); // normalizes; den must be nonzero
    static RationalFunction from_poly(UniPoly p) { return RationalFunction(std::move(p), UniPoly::one()); }
    static RationalFunction constant(const Rational& a) { return from_poly(UniPoly::constant(a)); }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const; // o nonzero
    RationalFunction operator-() const;
    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    std::string to_string(const std::string& var = "t") const;

  private:
    UniPoly num_, den_;
};

// Order of vanishing of f at the place p. At t = a this is the multiplicity
// of (t - a) in the numerator minus the denominator; at infinity it is
// deg(den) - deg(num). The zero function has no valuation (ZeroInputError).
long valuation(const RationalFunction& f, const Place& p);
long valuation(const UniPoly& f, const Place& p);

} // namespace ffdyn
