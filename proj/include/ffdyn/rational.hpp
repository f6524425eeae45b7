#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ffdyn {

// Exact rational scalars. GMP's canonical form (reduced fraction, positive
// denominator, zero stored as 0/1) is exactly the representation contract we
// need; every constructor below canonicalizes.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return out; // num/den coprime => num^e/den^e coprime
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// "5", "-3/4": canonical fraction syntax, no spaces.
inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

// Bit size of |n| (0 for n = 0); used by coefficient budgets.
inline std::size_t bit_size(const Integer& n) {
    return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline std::size_t bit_size(const Rational& r) {
    return bit_size(Integer(r.get_num())) + bit_size(Integer(r.get_den()));
}

} // namespace ffdyn
