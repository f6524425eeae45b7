#pragma once

#include <map>
#include <string>
#include <vector>

#include "ffdyn/rational.hpp"
#include "ffdyn/unipoly.hpp"

namespace ffdyn {

// Sparse multivariate polynomial over Q with a fixed number of variables,
// terms ordered lexicographically by exponent vector.  Used for the exact
// common-factor computations that back content removal; sizes there are
// small, so the algorithms favor clarity over asymptotics.
class MPoly {
  public:
    using Mono = std::vector<int>;

    explicit MPoly(int nvars) : nvars_(nvars) {}
    static MPoly constant(int nvars, const Rational& c);
    static MPoly monomial(int nvars, Mono mono, const Rational& c);
    static MPoly variable(int nvars, int var);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int degree_in(int var) const;  // -1 for the zero polynomial
    int total_degree() const;      // -1 for the zero polynomial
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Mono, Rational>& terms() const { return terms_; }
    const Rational& leading_coeff() const; // lex-largest term; poly must be nonzero

    void add_term(const Mono& mono, const Rational& c); // accumulate, dropping zeros

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Rational& c) const;
    MPoly pow(int k) const;
    bool operator==(const MPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    // Exact quotient; throws Error if the division leaves a remainder.
    MPoly exact_div(const MPoly& o) const;

    // View as a univariate polynomial in `var`: coefficient polynomials by
    // exponent, each free of `var`.
    std::map<int, MPoly> as_univariate(int var) const;
    static MPoly from_univariate(int nvars, int var, const std::map<int, MPoly>& parts);

    // Conversions for effectively univariate polynomials.
    UniPoly to_unipoly(int var) const; // requires all other variables absent
    static MPoly from_unipoly(int nvars, int var, const UniPoly& u);

    std::size_t coeff_bits() const;
    std::string to_string(const std::vector<std::string>& names) const;

  private:
    int nvars_;
    std::map<Mono, Rational> terms_;
};

// Gcd normalized to lex-leading coefficient 1 (primitive pseudo-remainder
// sequences, univariate base case through the modular gcd).
MPoly gcd_mpoly(const MPoly& a, const MPoly& b);

// Content of `a` with respect to `var`: the gcd of its univariate-view
// coefficients (zero polynomial for zero input).
MPoly content_wrt(const MPoly& a, int var);

} // namespace ffdyn
