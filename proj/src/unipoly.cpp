#include "ffdyn/unipoly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "ffdyn/errors.hpp"
#include "ffdyn/intfactor.hpp"

namespace ffdyn {

namespace {
const Rational kZero(0);
}

UniPoly UniPoly::constant(const Rational& a) {
    UniPoly f;
    if (a != 0) f.c_.push_back(a);
    return f;
}

UniPoly UniPoly::monomial(const Rational& a, int k) {
    UniPoly f;
    if (a != 0) {
        f.c_.assign(static_cast<std::size_t>(k) + 1, Rational(0));
        f.c_.back() = a;
    }
    return f;
}

UniPoly UniPoly::linear_root(const Rational& a) {
    UniPoly f;
    f.c_ = {-a, Rational(1)};
    return f;
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UniPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<std::size_t>(i)];
}

const Rational& UniPoly::leading_coeff() const {
    if (c_.empty()) return kZero;
    return c_.back();
}

int UniPoly::trailing_valuation() const {
    if (c_.empty()) throw ZeroInputError("trailing_valuation: zero polynomial");
    int i = 0;
    while (c_[static_cast<std::size_t>(i)] == 0) ++i;
    return i;
}

UniPoly UniPoly::operator-() const {
    UniPoly f(*this);
    for (auto& a : f.c_) a = -a;
    return f;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly f;
    f.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) f.c_[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) f.c_[i] += o.c_[i];
    f.trim();
    return f;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    UniPoly f;
    f.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            f.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    f.trim();
    return f;
}

UniPoly UniPoly::operator*(const Rational& a) const {
    if (a == 0) return UniPoly();
    UniPoly f(*this);
    for (auto& x : f.c_) x *= a;
    return f;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw ZeroInputError("divmod: division by zero polynomial");
    UniPoly r(*this), q;
    if (degree() < d.degree()) return {q, r};
    q.c_.assign(static_cast<std::size_t>(degree() - d.degree()) + 1, Rational(0));
    const Rational& lc = d.leading_coeff();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        Rational f = r.leading_coeff() / lc;
        q.c_[static_cast<std::size_t>(k)] = f;
        for (int i = 0; i <= d.degree(); ++i)
            r.c_[static_cast<std::size_t>(i + k)] -= f * d.c_[static_cast<std::size_t>(i)];
        r.trim();
    }
    q.trim();
    return {q, r};
}

UniPoly UniPoly::exact_div(const UniPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw Error("exact_div: nonzero remainder");
    return q;
}

std::pair<UniPoly, Rational> UniPoly::div_linear(const Rational& a) const {
    // Horner: f = (t - a) q + f(a).
    UniPoly q;
    if (is_zero()) return {q, Rational(0)};
    if (is_constant()) return {q, c_[0]};
    q.c_.assign(c_.size() - 1, Rational(0));
    Rational carry = c_.back();
    for (int i = degree() - 1; i >= 0; --i) {
        q.c_[static_cast<std::size_t>(i)] = carry;
        carry = carry * a + c_[static_cast<std::size_t>(i)];
    }
    q.trim();
    return {q, carry};
}

int UniPoly::multiplicity_at(const Rational& a) const {
    if (is_zero()) throw ZeroInputError("multiplicity_at: zero polynomial");
    int m = 0;
    UniPoly f(*this);
    for (;;) {
        auto [q, rem] = f.div_linear(a);
        if (rem != 0) return m;
        ++m;
        f = q;
        if (f.is_zero()) return m; // constant numerator fully divided
    }
}

Rational UniPoly::eval(const Rational& a) const {
    Rational v(0);
    for (std::size_t i = c_.size(); i-- > 0;) v = v * a + c_[i];
    return v;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return UniPoly();
    return *this * (Rational(1) / leading_coeff());
}

UniPoly UniPoly::derivative() const {
    UniPoly f;
    if (degree() < 1) return f;
    f.c_.assign(c_.size() - 1, Rational(0));
    for (std::size_t i = 1; i < c_.size(); ++i) f.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
    f.trim();
    return f;
}

std::size_t UniPoly::coeff_bits() const {
    std::size_t total = 0;
    for (const auto& a : c_) total += bit_size(a);
    return total;
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& a = coeff(i);
        if (a == 0) continue;
        Rational mag = abs(a);
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        bool unit = (mag == 1);
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (!unit) os << mag.get_str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::vector<Integer> primitive_integer_coeffs(const UniPoly& f) {
    if (f.is_zero()) throw ZeroInputError("primitive_integer_coeffs: zero polynomial");
    const auto& c = f.coeffs();
    Integer den_lcm(1);
    for (const auto& a : c)
        if (a != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den_mpz_t());
    std::vector<Integer> z(c.size());
    Integer content(0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) {
            z[i] = Integer(c[i].get_num()) * (den_lcm / Integer(c[i].get_den()));
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[i].get_mpz_t());
        }
    }
    if (z.back() < 0) content = -content;
    for (auto& a : z) a /= content;
    return z;
}

// ---------------------------------------------------------------------------
// Modular gcd machinery. Word primes just below 2^32 so products fit in
// uint64; the supply extends lazily (band after band) and is shared, so access
// is mutex-guarded for the parallel runner.

namespace {

std::vector<unsigned long>& prime_pool() {
    static std::vector<unsigned long> pool;
    return pool;
}
std::mutex prime_mutex;

unsigned long nth_word_prime(std::size_t i) {
    std::lock_guard<std::mutex> lock(prime_mutex);
    auto& pool = prime_pool();
    static Integer cursor = Integer(1) << 31; // first band: primes above 2^31
    while (pool.size() <= i) {
        mpz_nextprime(cursor.get_mpz_t(), cursor.get_mpz_t());
        if (cursor >= (Integer(1) << 32))
            throw ResourceLimitError("prime supply exhausted");
        pool.push_back(cursor.get_ui());
    }
    return pool[i];
}

using ZpPoly = std::vector<unsigned long>; // ascending coeffs, trimmed, values < p

unsigned long zp_pow(unsigned long b, unsigned long e, unsigned long p) {
    unsigned long r = 1;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}
unsigned long zp_inv(unsigned long a, unsigned long p) { return zp_pow(a % p, p - 2, p); }

void zp_trim(ZpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZpPoly zp_reduce(const std::vector<Integer>& z, unsigned long p) {
    ZpPoly f(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        f[i] = mpz_fdiv_ui(z[i].get_mpz_t(), p);
    zp_trim(f);
    return f;
}

void zp_make_monic(ZpPoly& f, unsigned long p) {
    if (f.empty() || f.back() == 1) return;
    unsigned long inv = zp_inv(f.back(), p);
    for (auto& a : f) a = (a * inv) % p;
}

// In-place remainder of a by monic-scaled b.
void zp_rem(ZpPoly& a, const ZpPoly& b, unsigned long p) {
    unsigned long inv = zp_inv(b.back(), p);
    while (a.size() >= b.size()) {
        unsigned long f = (a.back() * inv) % p;
        std::size_t off = a.size() - b.size();
        if (f != 0) {
            for (std::size_t i = 0; i < b.size(); ++i) {
                unsigned long s = (f * b[i]) % p;
                unsigned long& t = a[off + i];
                t = (t >= s) ? t - s : t + p - s;
            }
        }
        a.pop_back();
        zp_trim(a);
        if (a.empty()) break;
    }
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, unsigned long p) {
    while (!b.empty()) {
        zp_rem(a, b, p);
        std::swap(a, b);
    }
    zp_make_monic(a, p);
    return a;
}

// Exact division of integer polynomials: a / b if it divides, else nullopt.
std::optional<std::vector<Integer>> divide_exact_z(const std::vector<Integer>& a,
                                                   const std::vector<Integer>& b) {
    if (a.size() < b.size()) return std::nullopt;
    std::vector<Integer> r = a, q(a.size() - b.size() + 1);
    const Integer& lc = b.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer& top = r[k + b.size() - 1];
        if (top == 0) { q[k] = 0; continue; }
        if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
        q[k] = top / lc;
        for (std::size_t i = 0; i < b.size(); ++i) r[k + i] -= q[k] * b[i];
    }
    for (const Integer& v : r)
        if (v != 0) return std::nullopt;
    return q;
}

std::vector<Integer> primitive_part_z(std::vector<Integer> z) {
    Integer content(0);
    for (const Integer& a : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), a.get_mpz_t());
    if (content == 0) return z;
    if (z.back() < 0) content = -content;
    for (Integer& a : z) a /= content;
    return z;
}

int deg_z(const std::vector<Integer>& z) {
    int d = static_cast<int>(z.size()) - 1;
    while (d >= 0 && z[static_cast<std::size_t>(d)] == 0) --d;
    return d;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed incrementally.
std::vector<Integer> pseudo_rem_z(std::vector<Integer> a, const std::vector<Integer>& b) {
    const Integer& lc = b.back();
    int db = static_cast<int>(b.size()) - 1;
    int da = deg_z(a);
    while (da >= db) {
        Integer top = a[static_cast<std::size_t>(da)];
        for (int i = 0; i < da; ++i) a[static_cast<std::size_t>(i)] *= lc;
        int off = da - db;
        for (int i = 0; i < db; ++i)
            a[static_cast<std::size_t>(off + i)] -= top * b[static_cast<std::size_t>(i)];
        a[static_cast<std::size_t>(da)] = 0;
        da = deg_z(a);
    }
    a.resize(static_cast<std::size_t>(std::max(da + 1, 0)));
    return a;
}

// Primitive PRS; always correct, used when the modular path gives up.
std::vector<Integer> prs_gcd_z(std::vector<Integer> a, std::vector<Integer> b) {
    if (deg_z(a) < deg_z(b)) std::swap(a, b);
    while (true) {
        std::vector<Integer> r = pseudo_rem_z(a, b);
        if (deg_z(r) < 0) return primitive_part_z(b);
        if (deg_z(r) == 0) return {Integer(1)};
        a = std::move(b);
        b = primitive_part_z(std::move(r));
    }
}

UniPoly from_integer_coeffs(const std::vector<Integer>& z) {
    std::vector<Rational> c(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) c[i] = Rational(z[i]);
    return UniPoly(std::move(c));
}

// t^s * monic(z)
UniPoly shifted_monic(const std::vector<Integer>& z, int s) {
    UniPoly g = from_integer_coeffs(z).monic();
    if (s > 0) g = g * UniPoly::monomial(Rational(1), s);
    return g;
}

int trailing_zeros_z(const std::vector<Integer>& z) {
    int i = 0;
    while (z[static_cast<std::size_t>(i)] == 0) ++i;
    return i;
}

} // namespace

UniPoly gcd_unipoly(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) return UniPoly();
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return UniPoly::one();

    std::vector<Integer> A = primitive_integer_coeffs(a);
    std::vector<Integer> B = primitive_integer_coeffs(b);
    int s = std::min(trailing_zeros_z(A), trailing_zeros_z(B));
    if (s > 0) {
        A.erase(A.begin(), A.begin() + trailing_zeros_z(A));
        B.erase(B.begin(), B.begin() + trailing_zeros_z(B));
    }
    if (A.size() == 1 || B.size() == 1) return shifted_monic({Integer(1)}, s);

    Integer lcg;
    mpz_gcd(lcg.get_mpz_t(), A.back().get_mpz_t(), B.back().get_mpz_t());

    // Modular images + CRT; verified by exact trial division over Z.
    constexpr std::size_t kMaxPrimes = 4096;
    int best_deg = -2;
    std::vector<Integer> crt;      // residues mod `modulus`, scaled by lcg
    Integer modulus(1);
    std::vector<Integer> last_candidate;
    for (std::size_t pi = 0; pi < kMaxPrimes; ++pi) {
        unsigned long p = nth_word_prime(pi);
        if (mpz_fdiv_ui(A.back().get_mpz_t(), p) == 0 ||
            mpz_fdiv_ui(B.back().get_mpz_t(), p) == 0)
            continue;
        ZpPoly g = zp_gcd(zp_reduce(A, p), zp_reduce(B, p), p);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg == 0) return shifted_monic({Integer(1)}, s);
        if (best_deg >= 0 && dg > best_deg) continue; // unlucky prime
        unsigned long scale = mpz_fdiv_ui(lcg.get_mpz_t(), p);
        for (auto& x : g) x = (x * scale) % p;
        if (best_deg < 0 || dg < best_deg) {
            best_deg = dg;
            crt.assign(g.size(), Integer(0));
            for (std::size_t i = 0; i < g.size(); ++i) crt[i] = static_cast<unsigned long>(g[i]);
            modulus = Integer(static_cast<unsigned long>(p));
            last_candidate.clear();
        } else {
            // CRT combine with the accumulated residues.
            unsigned long m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
            unsigned long minv = zp_inv(m_mod_p, p);
            for (std::size_t i = 0; i < crt.size(); ++i) {
                unsigned long gi = i < g.size() ? g[i] : 0;
                unsigned long ri = mpz_fdiv_ui(crt[i].get_mpz_t(), p);
                unsigned long diff = gi >= ri ? gi - ri : gi + p - ri;
                unsigned long k = (diff * minv) % p;
                crt[i] += modulus * Integer(static_cast<unsigned long>(k));
            }
            modulus *= Integer(static_cast<unsigned long>(p));
        }
        // Symmetric lift -> primitive part -> stability check -> verify.
        std::vector<Integer> cand(crt.size());
        Integer half = modulus / 2;
        for (std::size_t i = 0; i < crt.size(); ++i)
            cand[i] = crt[i] > half ? crt[i] - modulus : crt[i];
        if (cand.back() == 0) continue; // leading residue collapsed; need more primes
        cand = primitive_part_z(std::move(cand));
        if (cand == last_candidate) {
            if (divide_exact_z(A, cand) && divide_exact_z(B, cand))
                return shifted_monic(cand, s);
        }
        last_candidate = std::move(cand);
    }
    return shifted_monic(prs_gcd_z(A, B), s);
}

UniPoly lcm_unipoly(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    UniPoly g = gcd_unipoly(a, b);
    return (a * b).exact_div(g).monic();
}

std::vector<std::pair<UniPoly, int>> squarefree_parts(const UniPoly& f) {
    if (f.is_zero()) throw ZeroInputError("squarefree_parts: zero polynomial");
    std::vector<std::pair<UniPoly, int>> out;
    if (f.is_constant()) return out;

    // Yun's algorithm (characteristic zero). The leading scalar of f rides
    // along in b and d consistently; the extracted parts are monic gcds.
    UniPoly a = gcd_unipoly(f, f.derivative());
    UniPoly b = f.exact_div(a);
    UniPoly d = f.derivative().exact_div(a) - b.derivative();
    for (int m = 1; !b.is_constant(); ++m) {
        UniPoly q = gcd_unipoly(b, d);
        if (!q.is_constant()) out.emplace_back(q, m);
        b = b.exact_div(q);
        d = d.exact_div(q) - b.derivative();
    }
    return out;
}

SplitResult split_linear_places(const UniPoly& f) {
    if (f.is_zero()) throw ZeroInputError("split_linear_places: zero polynomial");
    SplitResult out;
    if (f.is_constant()) return out;

    std::vector<Integer> z = primitive_integer_coeffs(f);
    int s = trailing_zeros_z(z);
    if (s > 0) {
        out.roots.emplace_back(Rational(0), s);
        z.erase(z.begin(), z.begin() + s);
    }
    UniPoly g = from_integer_coeffs(z);
    if (g.is_constant()) return out;

    constexpr std::size_t kCandidateCap = 1u << 20;
    std::vector<Integer> ps = positive_divisors(z.front(), kCandidateCap);
    std::vector<Integer> qs = positive_divisors(z.back(), kCandidateCap);
    if (ps.size() * qs.size() * 2 > kCandidateCap)
        throw ResourceLimitError("split_linear_places: too many root candidates");

    for (const Integer& q : qs) {
        for (const Integer& p : ps) {
            Integer common;
            mpz_gcd(common.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            if (common != 1) continue;
            for (int sign = 0; sign < 2; ++sign) {
                if (g.is_constant()) break;
                Rational r = make_rational(sign ? -p : p, q);
                auto [quot, rem] = g.div_linear(r);
                if (rem != 0) continue;
                int mult = 1;
                g = quot;
                for (;;) {
                    auto [q2, r2] = g.div_linear(r);
                    if (r2 != 0 || g.is_zero()) break;
                    ++mult;
                    g = q2;
                }
                out.roots.emplace_back(r, mult);
            }
        }
    }
    out.cofactor_degree = std::max(g.degree(), 0);
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

} // namespace ffdyn
