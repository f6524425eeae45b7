#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ffdyn/unipoly.hpp"

namespace ffdyn {

// Homogeneous binary form in (t0, t1) of declared degree D, stored sparse:
// term i is c_i * t0^(D-i) * t1^i. The affine parameter is t = t0/t1, so
// dehomogenizing at t1 = 1 gives the polynomial u(t) = sum c_i t^(D-i), and
// the declared degree is preserved even when u has lower degree (the deficit
// is a power of t1, i.e. vanishing at the place at infinity (1:0)).
class BinaryForm {
  public:
    BinaryForm() : degree_(0) {}

    static BinaryForm zero(int degree);
    // t1^(D - deg u) * homogenization of u; requires deg u <= D.
    static BinaryForm from_unipoly(const UniPoly& u, int degree);
    static BinaryForm term(int degree, int i, const Rational& coeff);
    static BinaryForm constant(const Rational& a) { return term(0, 0, a); }

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return degree_ == 0; }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<std::pair<int, Rational>>& terms() const { return terms_; }
    Rational coeff(int i) const; // coefficient of t0^(D-i) t1^i

    // u with u(t) = F(t, 1).
    UniPoly dehomogenize() const;
    // Order of vanishing at (1:0) resp. (0:1); zero form is an error.
    int t1_valuation() const;
    int t0_valuation() const;

    BinaryForm operator+(const BinaryForm& o) const; // degrees must match
    BinaryForm operator-() const;
    BinaryForm operator*(const BinaryForm& o) const;
    BinaryForm operator*(const Rational& a) const;
    BinaryForm pow(int k) const;
    BinaryForm exact_div(const BinaryForm& o) const;
    bool operator==(const BinaryForm& o) const {
        return degree_ == o.degree_ && terms_ == o.terms_;
    }
    bool operator!=(const BinaryForm& o) const { return !(*this == o); }

    // F(a, 1) = dehomogenized value at t = a.
    Rational eval_affine(const Rational& a) const;
    // F(1, 0): nonzero iff the form does not vanish at infinity.
    Rational eval_infinity() const { return coeff(0); }

    // Scaled so the first nonzero coefficient (lowest i) is 1.
    BinaryForm pivot_normalized() const;

    std::size_t coeff_bits() const;
    std::string to_string() const; // explicit t0/t1 text, mainly for diagnostics

  private:
    int degree_;
    std::vector<std::pair<int, Rational>> terms_; // ascending i, nonzero coeffs
};

// Greatest common divisor, pivot-normalized (equivalently: monic after
// dehomogenization). gcd(F, 0) = pivot-normalized F; gcd(0, 0) = zero of
// degree 0. Shared zeros at infinity enter through the common t1-power.
BinaryForm gcd_binaryform(const BinaryForm& a, const BinaryForm& b);

} // namespace ffdyn
