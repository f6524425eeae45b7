#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffdyn/rational.hpp"

namespace ffdyn {

// Univariate polynomial over Q in the affine parameter t. Coefficients are
// stored dense, ascending by exponent, trimmed so the top coefficient is
// nonzero; the zero polynomial has an empty coefficient vector and degree -1.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly one() { return constant(Rational(1)); }
    static UniPoly constant(const Rational& a);
    // a * t^k
    static UniPoly monomial(const Rational& a, int k);
    // t - a
    static UniPoly linear_root(const Rational& a);

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& coeff(int i) const; // 0 outside the stored range
    const Rational& leading_coeff() const;
    const std::vector<Rational>& coeffs() const { return c_; }

    // Multiplicity of the root t = 0 (degree+1 convention avoided: 0 for
    // nonzero constant; calling on the zero polynomial is a contract error).
    int trailing_valuation() const;

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Rational& a) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    // Euclidean division by a nonzero divisor: returns (quotient, remainder).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    // Division known to be exact; throws Error if a remainder appears.
    UniPoly exact_div(const UniPoly& d) const;

    // Synthetic division by (t - a): quotient plus the remainder f(a).
    std::pair<UniPoly, Rational> div_linear(const Rational& a) const;
    // Multiplicity of t = a as a root (0 if not a root; f must be nonzero).
    int multiplicity_at(const Rational& a) const;

    Rational eval(const Rational& a) const;
    UniPoly monic() const; // zero stays zero
    UniPoly derivative() const;

    // Total bits across numerators and denominators (budget accounting).
    std::size_t coeff_bits() const;

    // Canonical text form, e.g. "t^3 - 1/2*t + 4".
    std::string to_string(const std::string& var = "t") const;

  private:
    void trim();
    std::vector<Rational> c_;
};

// Monic gcd. gcd(0,0) = 0, gcd(f,0) = monic f, nonzero constants give 1.
// Internally: primitive integer forms, small-prime coprimality filter, modular
// images with CRT and trial-division verification, primitive PRS fallback.
UniPoly gcd_unipoly(const UniPoly& a, const UniPoly& b);

// Monic lcm (0 if either input is 0).
UniPoly lcm_unipoly(const UniPoly& a, const UniPoly& b);

// Primitive integer image of a nonzero f: f = unit * content * primitive,
// primitive has coprime integer coefficients and positive leading one.
std::vector<Integer> primitive_integer_coeffs(const UniPoly& f);

// Squarefree decomposition (Yun): f = c * prod q_i^{m_i} with the q_i monic,
// squarefree, pairwise coprime, nonconstant, and m_i strictly increasing.
// Constants decompose into an empty list; f must be nonzero.
std::vector<std::pair<UniPoly, int>> squarefree_parts(const UniPoly& f);

// All rational roots with multiplicities, plus the degree of the non-split
// cofactor (0 iff f splits into linear factors over Q). f must be nonzero.
struct SplitResult {
    std::vector<std::pair<Rational, int>> roots; // ascending by value
    int cofactor_degree = 0;
    bool split() const { return cofactor_degree == 0; }
};
SplitResult split_linear_places(const UniPoly& f);

} // namespace ffdyn
