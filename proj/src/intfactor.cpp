#include "ffdyn/intfactor.hpp"

#include <algorithm>

#include "ffdyn/errors.hpp"

namespace ffdyn {

namespace {

// Pollard-Brent rho; n odd composite, not a prime power of a tiny prime.
Integer pollard_brent(const Integer& n) {
    if (n % 2 == 0) return 2;
    // Deterministic constant cycling keeps factorizations reproducible.
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        Integer saved_x;
        unsigned long power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                saved_x = x;
                power *= 2;
                lam = 0;
            }
            // x <- x^2 + c mod n
            x = (x * x + c) % n;
            ++lam;
            Integer diff = x - saved_x;
            if (diff == 0) { d = n; break; } // cycle without factor: retry with new c
            Integer ad = abs(diff);
            mpz_gcd(d.get_mpz_t(), ad.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void factor_rec(const Integer& n, std::vector<Integer>& primes) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32) != 0) {
        primes.push_back(n);
        return;
    }
    Integer d = pollard_brent(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

} // namespace

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n_in) {
    if (n_in == 0) throw ZeroInputError("factor_integer: zero input");
    Integer n = abs(n_in);
    std::vector<Integer> primes;
    // Trial division below 2^16 clears the common case quickly and guarantees
    // rho only ever sees odd inputs with no tiny factors.
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.push_back(Integer(static_cast<long>(p)));
            n /= static_cast<long>(p);
        }
    }
    for (unsigned long p = 17; p < 65536 && n > 1; p += 2) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            Integer pp(static_cast<long>(p));
            // Cheap compositeness skip: p with small factors was already removed.
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                primes.push_back(pp);
                n /= pp;
            }
        }
    }
    if (n > 1) factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Integer, int>> out;
    for (const Integer& p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<Integer> positive_divisors(const Integer& n, std::size_t cap) {
    if (n == 0) throw ZeroInputError("positive_divisors: zero input");
    Integer a = abs(n);
    if (a == 1) return {Integer(1)};
    auto fac = factor_integer(a);
    std::size_t count = 1;
    for (const auto& [p, e] : fac) {
        count *= static_cast<std::size_t>(e) + 1;
        if (count > cap)
            throw ResourceLimitError("positive_divisors: candidate count exceeds cap");
    }
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [p, e] : fac) {
        std::size_t old = divs.size();
        Integer pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < old; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace ffdyn
