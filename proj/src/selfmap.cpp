#include "ffdyn/selfmap.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

#include "ffdyn/errors.hpp"
#include "ffdyn/mpoly.hpp"
#include "ffdyn/rng.hpp"

namespace ffdyn {

namespace {

int mono_total(const XMono& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
}

// --------------------------------------------------------------------------
// Modular coprimality certificate.
//
// After monomial content and the coefficient gcd are divided out, any
// remaining common factor of the coordinate forms has positive x-degree.
// Specialize t to a rational value a under which no nonzero form vanishes:
// a common factor F would specialize to a nonzero x-homogeneous factor of
// positive degree.  Restrict to the line x = u*s + v; since the specialized
// forms are homogeneous, the leading s-coefficient of each restriction is
// the form's value at u, so checking those values are nonzero pins every
// degree (including the specialized factor's, which divides them).  All of
// this is computed modulo a word-sized prime: nonzero mod p implies nonzero
// over Q, and with leading coefficients preserved the reduction of the
// rational gcd keeps its degree and divides the mod-p gcd.  Hence a constant
// mod-p gcd certifies that the forms are coprime.  The test is one-sided:
// failure proves nothing and falls through to the exact multivariate gcd.
// --------------------------------------------------------------------------

constexpr std::uint64_t kCertPrimes[] = {2147483647ull, 2147483629ull, 2147483587ull,
                                         2147483579ull, 2147483563ull, 2147483549ull};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
        e >>= 1;
    }
    return r;
}

// Rational mod p; false if the denominator vanishes mod p.
bool rational_modp(const Rational& v, std::uint64_t p, std::uint64_t& out) {
    std::uint64_t den = mpz_fdiv_ui(v.get_den().get_mpz_t(), static_cast<unsigned long>(p));
    if (den == 0) return false;
    std::uint64_t num = mpz_fdiv_ui(v.get_num().get_mpz_t(), static_cast<unsigned long>(p));
    out = mulmod(num, powmod(den, p - 2, p), p);
    return true;
}

using ModPoly = std::vector<std::uint64_t>; // dense in s, ascending

void modpoly_trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly modpoly_mul(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    return c;
}

ModPoly modpoly_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    modpoly_trim(a);
    modpoly_trim(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            std::uint64_t q = mulmod(a.back(), inv, p);
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[off + i] = (a[off + i] + p - mulmod(q, b[i], p)) % p;
            modpoly_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// Coefficient of a degree-e binary form evaluated at (t0, t1) = (a, 1) mod p.
// False if some denominator vanishes mod p.
bool coeff_value_modp(const BinaryForm& c, std::uint64_t a_mod, std::uint64_t p,
                      std::uint64_t& out) {
    int e = c.degree();
    out = 0;
    for (const auto& [i, v] : c.terms()) {
        std::uint64_t vm;
        if (!rational_modp(v, p, vm)) return false;
        out = (out + mulmod(vm, powmod(a_mod, static_cast<std::uint64_t>(e - i), p), p)) % p;
    }
    return true;
}

bool certify_coprime(const std::vector<CoordForm>& forms, int n, std::uint64_t salt) {
    for (int trial = 0; trial < 3; ++trial) {
        std::uint64_t p = kCertPrimes[trial % (sizeof(kCertPrimes) / sizeof(*kCertPrimes))];
        Rng rng(0x5e1f4a9ull ^ salt ^ (static_cast<std::uint64_t>(trial) << 32));

        // t-specialization: walk a = 0, 1, -1, 2, -2, ... (offset per trial)
        // until every nonzero form stays nonzero mod p.
        std::vector<std::map<XMono, std::uint64_t>> spec;
        bool have_spec = false;
        for (int step = trial; step < trial + 64 && !have_spec; ++step) {
            long a = (step % 2 == 0) ? step / 2 : -(step / 2 + 1);
            std::uint64_t a_mod = static_cast<std::uint64_t>((a % static_cast<long>(p) +
                                                              static_cast<long>(p)) %
                                                             static_cast<long>(p));
            spec.assign(forms.size(), {});
            bool ok = true;
            for (std::size_t f = 0; f < forms.size() && ok; ++f) {
                for (const auto& [mono, coeff] : forms[f]) {
                    std::uint64_t val;
                    if (!coeff_value_modp(coeff, a_mod, p, val)) {
                        ok = false;
                        break;
                    }
                    if (val != 0) spec[f][mono] = val;
                }
                if (ok && !forms[f].empty() && spec[f].empty()) ok = false;
            }
            have_spec = ok;
        }
        if (!have_spec) continue;

        // Line restriction x_j = u_j * s + v_j with every nonzero specialized
        // form nonzero at u (pins the leading s-coefficients).
        int nv = n + 1;
        std::vector<std::uint64_t> u(static_cast<std::size_t>(nv)), v(static_cast<std::size_t>(nv));
        bool have_line = false;
        for (int attempt = 0; attempt < 40 && !have_line; ++attempt) {
            for (int j = 0; j < nv; ++j) {
                u[static_cast<std::size_t>(j)] =
                    static_cast<std::uint64_t>(rng.uniform(1, static_cast<std::int64_t>(p) - 1));
                v[static_cast<std::size_t>(j)] =
                    static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(p) - 1));
            }
            have_line = true;
            for (const auto& sf : spec) {
                if (sf.empty()) continue;
                std::uint64_t total = 0;
                for (const auto& [mono, val] : sf) {
                    std::uint64_t term = val;
                    for (int j = 0; j < nv; ++j)
                        if (mono[static_cast<std::size_t>(j)] > 0)
                            term = mulmod(term,
                                          powmod(u[static_cast<std::size_t>(j)],
                                                 static_cast<std::uint64_t>(
                                                     mono[static_cast<std::size_t>(j)]),
                                                 p),
                                          p);
                    total = (total + term) % p;
                }
                if (total == 0) {
                    have_line = false;
                    break;
                }
            }
        }
        if (!have_line) continue;

        // Restricted univariates and their gcd.
        ModPoly g;
        bool first = true;
        for (const auto& sf : spec) {
            if (sf.empty()) continue;
            // Power cache of (u_j s + v_j)^k per variable.
            std::vector<std::vector<ModPoly>> pows(static_cast<std::size_t>(nv));
            for (int j = 0; j < nv; ++j) pows[static_cast<std::size_t>(j)] = {{1}};
            auto power = [&](int j, int k) -> const ModPoly& {
                auto& table = pows[static_cast<std::size_t>(j)];
                while (static_cast<int>(table.size()) <= k) {
                    ModPoly lin = {v[static_cast<std::size_t>(j)], u[static_cast<std::size_t>(j)]};
                    table.push_back(modpoly_mul(table.back(), lin, p));
                }
                return table[static_cast<std::size_t>(k)];
            };
            ModPoly r;
            for (const auto& [mono, val] : sf) {
                ModPoly term = {val};
                for (int j = 0; j < nv; ++j)
                    if (mono[static_cast<std::size_t>(j)] > 0)
                        term = modpoly_mul(term, power(j, mono[static_cast<std::size_t>(j)]), p);
                if (term.size() > r.size()) r.resize(term.size(), 0);
                for (std::size_t i = 0; i < term.size(); ++i) r[i] = (r[i] + term[i]) % p;
            }
            modpoly_trim(r);
            g = first ? r : modpoly_gcd(g, r, p);
            first = false;
            if (g.size() == 1) return true; // constant gcd: coprime certified
        }
        if (!first && g.size() == 1) return true;
    }
    return false;
}

// --------------------------------------------------------------------------
// Exact fallback: flat gcd over Q[x_0..x_n, t].  The coefficient gcd has
// already been divided out, so any common factor has positive x-degree and
// survives dehomogenizing t faithfully.
// --------------------------------------------------------------------------

MPoly coordform_to_flat(const CoordForm& f, int n, int e) {
    MPoly out(n + 2);
    for (const auto& [mono, coeff] : f)
        for (const auto& [i, val] : coeff.terms()) {
            MPoly::Mono flat(mono.begin(), mono.end());
            flat.push_back(e - i); // t-exponent of t0^{e-i} t1^i at t1 = 1
            out.add_term(flat, val);
        }
    return out;
}

CoordForm flat_to_coordform(const MPoly& f, int e_new) {
    std::map<XMono, UniPoly> parts;
    for (const auto& [flat, val] : f.terms()) {
        XMono mono(flat.begin(), flat.end() - 1);
        int tk = flat.back();
        auto it = parts.find(mono);
        if (it == parts.end()) it = parts.emplace(mono, UniPoly()).first;
        it->second = it->second + UniPoly::monomial(val, tk);
    }
    CoordForm out;
    for (auto& [mono, u] : parts)
        if (!u.is_zero()) out.emplace(mono, BinaryForm::from_unipoly(u, e_new));
    return out;
}

// --------------------------------------------------------------------------
// Coprime factor basis for the monomial-map indeterminacy test: refine a
// list of univariate polynomials into monic, squarefree, pairwise coprime
// basis elements with an exponent row per input.  Multiplicity at any root
// of a basis element is then exactly the recorded exponent.
// --------------------------------------------------------------------------

struct RefinedBasis {
    std::vector<UniPoly> basis;
    std::vector<std::vector<int>> exponents; // [input][basis element]
};

RefinedBasis refine_factors(const std::vector<UniPoly>& inputs) {
    RefinedBasis rb;
    rb.exponents.assign(inputs.size(), {});
    auto widen = [&](std::size_t count) {
        for (auto& row : rb.exponents) row.resize(count, 0);
    };
    for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
        widen(rb.basis.size());
        for (auto& [part, mult] : squarefree_parts(inputs[idx])) {
            UniPoly q = part;
            for (std::size_t k = 0; k < rb.basis.size() && !q.is_constant(); ++k) {
                UniPoly g = gcd_unipoly(q, rb.basis[k]);
                if (g.is_constant()) continue;
                UniPoly rest = rb.basis[k].exact_div(g).monic();
                if (!rest.is_constant()) {
                    // Split b = g * rest; every recorded exponent applies to
                    // both pieces.
                    rb.basis[k] = g;
                    rb.basis.push_back(rest);
                    for (auto& row : rb.exponents) row.push_back(row[k]);
                    widen(rb.basis.size());
                } else {
                    rb.basis[k] = g;
                }
                rb.exponents[idx][k] += mult;
                q = q.exact_div(g).monic();
            }
            if (!q.is_constant()) {
                rb.basis.push_back(q);
                widen(rb.basis.size());
                rb.exponents[idx].back() = mult;
            }
        }
    }
    return rb;
}

// Substitute the point's (integer-primitive) sections into every coordinate
// form.  Returns binary forms of degree d * D + e.
std::vector<BinaryForm> substitute(const SelfMap& f, const Point& P) {
    if (f.n() != P.n())
        throw DimensionError("evaluate: map and point live in different dimensions");
    std::vector<BinaryForm> coords = P.integer_primitive_coords();
    int D = P.degree();
    int out_deg = f.x_degree() * D + f.t_degree();

    std::vector<std::vector<BinaryForm>> pows(coords.size());
    for (std::size_t j = 0; j < coords.size(); ++j)
        pows[j] = {BinaryForm::constant(Rational(1))};
    auto power = [&](std::size_t j, int k) -> const BinaryForm& {
        auto& table = pows[j];
        while (static_cast<int>(table.size()) <= k) table.push_back(table.back() * coords[j]);
        return table[static_cast<std::size_t>(k)];
    };

    std::vector<BinaryForm> out;
    out.reserve(f.forms().size());
    for (const auto& form : f.forms()) {
        BinaryForm acc = BinaryForm::zero(out_deg);
        for (const auto& [mono, coeff] : form) {
            BinaryForm term = coeff;
            for (std::size_t j = 0; j < coords.size(); ++j)
                if (mono[j] > 0) term = term * power(j, mono[j]);
            acc = acc + term;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

constexpr long kInfiniteMult = std::numeric_limits<long>::max() / 4;

} // namespace

// ---------------------------------------------------------------- MonomialMap

MonomialMap MonomialMap::from_matrix(std::vector<std::vector<int>> rows) {
    std::size_t m = rows.size();
    if (m < 2) throw DimensionError("MonomialMap: need at least 2 rows");
    long sum0 = -1;
    for (const auto& row : rows) {
        if (row.size() != m) throw DimensionError("MonomialMap: matrix must be square");
        long s = 0;
        for (int v : row) {
            if (v < 0) throw DimensionError("MonomialMap: negative exponent");
            s += v;
        }
        if (sum0 == -1) sum0 = s;
        if (s != sum0) throw DimensionError("MonomialMap: row sums differ");
    }
    for (std::size_t j = 0; j < m; ++j) {
        int cmin = rows[0][j];
        for (const auto& row : rows) cmin = std::min(cmin, row[j]);
        if (cmin > 0)
            for (auto& row : rows) row[j] -= cmin;
    }
    long reduced = 0;
    for (int v : rows[0]) reduced += v;
    if (reduced == 0) throw DimensionError("MonomialMap: degenerate (constant) map");
    MonomialMap out;
    out.rows_ = std::move(rows);
    return out;
}

int MonomialMap::degree() const {
    int s = 0;
    for (int v : rows_[0]) s += v;
    return s;
}

MonomialMap MonomialMap::after(const MonomialMap& other) const {
    if (n() != other.n()) throw DimensionError("MonomialMap: dimension mismatch");
    std::size_t m = rows_.size();
    std::vector<std::vector<int>> prod(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            long acc = 0;
            for (std::size_t k = 0; k < m; ++k)
                acc += static_cast<long>(rows_[i][k]) * other.rows_[k][j];
            if (acc > std::numeric_limits<int>::max() / 4)
                throw ResourceLimitError("MonomialMap: iterate exponents overflow");
            prod[i][j] = static_cast<int>(acc);
        }
    return from_matrix(std::move(prod));
}

// ------------------------------------------------------------------- SelfMap

SelfMap SelfMap::from_forms(int n, std::vector<CoordForm> raw) {
    if (n < 1) throw DimensionError("SelfMap: ambient dimension must be at least 1");
    if (raw.size() != static_cast<std::size_t>(n + 1))
        throw DimensionError("SelfMap: expected n+1 coordinate forms");

    // Drop stored zero coefficients; validate monomial lengths and a common
    // total x-degree.
    int d = -1;
    bool any = false;
    for (auto& form : raw) {
        for (auto it = form.begin(); it != form.end();) {
            if (it->second.is_zero()) {
                it = form.erase(it);
                continue;
            }
            const XMono& mono = it->first;
            if (mono.size() != static_cast<std::size_t>(n + 1))
                throw DimensionError("SelfMap: monomial arity mismatch");
            for (int v : mono)
                if (v < 0) throw DimensionError("SelfMap: negative exponent");
            int td = mono_total(mono);
            if (d == -1) d = td;
            if (td != d)
                throw DimensionError("SelfMap: coordinate forms are not homogeneous of a "
                                     "common x-degree");
            any = true;
            ++it;
        }
    }
    if (!any) throw AllZeroError("SelfMap: all coordinate forms are zero");

    // Pad coefficients to their common maximal t-degree with t1-powers.
    int e = 0;
    for (const auto& form : raw)
        for (const auto& [mono, coeff] : form) {
            (void)mono;
            e = std::max(e, coeff.degree());
        }
    for (auto& form : raw)
        for (auto& [mono, coeff] : form) {
            (void)mono;
            if (coeff.degree() < e) coeff = BinaryForm::from_unipoly(coeff.dehomogenize(), e);
        }

    ContentRemoved removed;

    // Monomial content: subtract per-variable minimum exponents.
    for (int j = 0; j <= n; ++j) {
        int cmin = std::numeric_limits<int>::max();
        for (const auto& form : raw) {
            if (form.empty()) continue;
            for (const auto& [mono, coeff] : form) {
                (void)coeff;
                cmin = std::min(cmin, mono[static_cast<std::size_t>(j)]);
            }
        }
        if (cmin == std::numeric_limits<int>::max() || cmin == 0) continue;
        for (auto& form : raw) {
            CoordForm shifted;
            for (auto& [mono, coeff] : form) {
                XMono m2 = mono;
                m2[static_cast<std::size_t>(j)] -= cmin;
                shifted.emplace(std::move(m2), std::move(coeff));
            }
            form = std::move(shifted);
        }
        d -= cmin;
        removed.x_degree += cmin;
    }

    // Coefficient gcd across all forms.
    BinaryForm tc = BinaryForm::zero(0);
    bool tc_started = false;
    for (const auto& form : raw)
        for (const auto& [mono, coeff] : form) {
            (void)mono;
            tc = tc_started ? gcd_binaryform(tc, coeff) : coeff.pivot_normalized();
            tc_started = true;
            if (tc.degree() == 0) break;
        }
    if (tc.degree() > 0) {
        for (auto& form : raw)
            for (auto& [mono, coeff] : form) {
                (void)mono;
                coeff = coeff.exact_div(tc);
            }
        e -= tc.degree();
        removed.t_degree += tc.degree();
    }

    // Remaining common factors must have positive x-degree.  Monomial tuples
    // cannot have one (their only factors are variables and coefficient
    // divisors, both already removed); otherwise certify coprimality or fall
    // back to the exact multivariate gcd.
    bool all_single = true;
    std::size_t nonzero_forms = 0;
    for (const auto& form : raw) {
        if (form.empty()) continue;
        ++nonzero_forms;
        if (form.size() > 1) all_single = false;
    }
    if (!all_single && nonzero_forms >= 2 && d > 0) {
        std::uint64_t salt = static_cast<std::uint64_t>(d) << 16 ^ static_cast<std::uint64_t>(e);
        if (!certify_coprime(raw, n, salt)) {
            MPoly g(n + 2);
            bool started = false;
            for (const auto& form : raw) {
                if (form.empty()) continue;
                MPoly flat = coordform_to_flat(form, n, e);
                g = started ? gcd_mpoly(g, flat) : flat;
                started = true;
                if (g.is_constant()) break;
            }
            if (!g.is_constant()) {
                // g is x-homogeneous (a gcd of x-homogeneous polynomials), so
                // any one monomial gives its x-degree.
                int a = 0;
                const auto& lead = g.terms().begin()->first;
                for (int j = 0; j <= n; ++j) a += lead[static_cast<std::size_t>(j)];
                int b = g.degree_in(n + 1);
                int e_new = e - b;
                for (auto& form : raw) {
                    if (form.empty()) continue;
                    MPoly q = coordform_to_flat(form, n, e).exact_div(g);
                    form = flat_to_coordform(q, e_new);
                }
                d -= a;
                e = e_new;
                removed.x_degree += a;
                removed.t_degree += b;
            }
        }
    } else if (nonzero_forms == 1) {
        // A single nonzero coordinate is its own common factor: the tuple
        // collapses to a constant coordinate.
        for (auto& form : raw) {
            if (form.empty()) continue;
            removed.x_degree += d;
            removed.t_degree += e;
            form.clear();
            form.emplace(XMono(static_cast<std::size_t>(n + 1), 0),
                         BinaryForm::constant(Rational(1)));
        }
        d = 0;
        e = 0;
    }

    // Canonical scale: first nonzero coefficient of the first monomial of the
    // first nonzero form becomes 1.
    Rational pivot(0);
    for (const auto& form : raw) {
        if (form.empty()) continue;
        pivot = form.begin()->second.terms().front().second;
        break;
    }
    if (pivot != 1) {
        Rational inv = Rational(1) / pivot;
        for (auto& form : raw)
            for (auto& [mono, coeff] : form) {
                (void)mono;
                coeff = coeff * inv;
            }
    }

    SelfMap out;
    out.forms_ = std::move(raw);
    out.d_ = d;
    out.e_ = e;
    out.removed_ = removed;
    return out;
}

SelfMap SelfMap::identity(int n) {
    std::vector<CoordForm> forms(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        XMono mono(static_cast<std::size_t>(n + 1), 0);
        mono[static_cast<std::size_t>(i)] = 1;
        forms[static_cast<std::size_t>(i)].emplace(std::move(mono),
                                                   BinaryForm::constant(Rational(1)));
    }
    return from_forms(n, std::move(forms));
}

bool SelfMap::is_identity() const {
    if (d_ != 1 || e_ != 0) return false;
    for (int i = 0; i <= n(); ++i) {
        const auto& form = forms_[static_cast<std::size_t>(i)];
        if (form.size() != 1) return false;
        const auto& [mono, coeff] = *form.begin();
        if (mono[static_cast<std::size_t>(i)] != 1 || mono_total(mono) != 1) return false;
        if (!coeff.is_constant() || coeff.terms().front().second != 1) return false;
    }
    return true;
}

bool SelfMap::is_monomial() const {
    for (const auto& form : forms_)
        if (form.size() != 1) return false;
    return true;
}

std::optional<MonomialMap> SelfMap::as_monomial_map() const {
    if (e_ != 0 || !is_monomial()) return std::nullopt;
    std::vector<std::vector<int>> rows;
    rows.reserve(forms_.size());
    for (const auto& form : forms_) rows.push_back(form.begin()->first);
    return MonomialMap::from_matrix(std::move(rows));
}

SelfMap SelfMap::from_monomial_map(const MonomialMap& m) {
    std::vector<CoordForm> forms(m.rows().size());
    for (std::size_t i = 0; i < m.rows().size(); ++i)
        forms[i].emplace(m.rows()[i], BinaryForm::constant(Rational(1)));
    return from_forms(m.n(), std::move(forms));
}

std::size_t SelfMap::coeff_bits() const {
    std::size_t total = 0;
    for (const auto& form : forms_)
        for (const auto& [mono, coeff] : form) {
            (void)mono;
            total += coeff.coeff_bits();
        }
    return total;
}

std::string SelfMap::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < forms_.size(); ++i) {
        if (i) os << " : ";
        const auto& form = forms_[i];
        if (form.empty()) {
            os << "0";
            continue;
        }
        bool first = true;
        for (const auto& [mono, coeff] : form) {
            if (!first) os << " + ";
            first = false;
            bool multi = coeff.term_count() > 1;
            std::string cs = coeff.to_string();
            bool unit = (cs == "1") && mono_total(mono) > 0;
            if (!unit) os << (multi ? "(" + cs + ")" : cs);
            bool printed = !unit;
            for (std::size_t j = 0; j < mono.size(); ++j) {
                if (mono[j] == 0) continue;
                if (printed) os << "*";
                printed = true;
                os << "x" << j;
                if (mono[j] > 1) os << "^" << mono[j];
            }
            if (!printed) os << cs;
        }
    }
    os << ")";
    return os.str();
}

// ------------------------------------------------------------------ dynamics

EvalResult evaluate(const SelfMap& f, const Point& P) {
    std::vector<BinaryForm> raw = substitute(f, P);
    bool all_zero = true;
    for (const auto& c : raw)
        if (!c.is_zero()) {
            all_zero = false;
            break;
        }
    EvalResult out;
    if (all_zero) return out;
    int raw_degree = f.x_degree() * P.degree() + f.t_degree();
    out.image = Point::normalize(std::move(raw));
    out.cancellation = raw_degree - out.image->degree();
    return out;
}

SelfMap compose(const SelfMap& f, const SelfMap& g) {
    if (f.n() != g.n()) throw DimensionError("compose: dimension mismatch");
    int n = f.n();
    XMono zero_mono(static_cast<std::size_t>(n + 1), 0);

    auto coordform_mul = [](const CoordForm& a, const CoordForm& b) {
        CoordForm c;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) {
                XMono m = ma;
                for (std::size_t j = 0; j < m.size(); ++j) m[j] += mb[j];
                BinaryForm prod = ca * cb;
                auto it = c.find(m);
                if (it == c.end())
                    c.emplace(std::move(m), std::move(prod));
                else {
                    it->second = it->second + prod;
                    if (it->second.is_zero()) c.erase(it);
                }
            }
        return c;
    };

    std::vector<std::vector<CoordForm>> pows(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j)
        pows[static_cast<std::size_t>(j)] = {
            CoordForm{{zero_mono, BinaryForm::constant(Rational(1))}}};
    auto power = [&](int j, int k) -> const CoordForm& {
        auto& table = pows[static_cast<std::size_t>(j)];
        while (static_cast<int>(table.size()) <= k)
            table.push_back(coordform_mul(table.back(), g.form(j)));
        return table[static_cast<std::size_t>(k)];
    };

    std::vector<CoordForm> result(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        CoordForm acc;
        for (const auto& [mono, coeff] : f.form(i)) {
            CoordForm term{{zero_mono, BinaryForm::constant(Rational(1))}};
            for (int j = 0; j <= n; ++j)
                if (mono[static_cast<std::size_t>(j)] > 0)
                    term = coordform_mul(term, power(j, mono[static_cast<std::size_t>(j)]));
            for (auto& [m, c] : term) {
                BinaryForm scaled = c * coeff;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(m, std::move(scaled));
                else {
                    it->second = it->second + scaled;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        }
        result[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return SelfMap::from_forms(n, std::move(result));
}

bool meets_indeterminacy(const SelfMap& f, const Point& P) {
    if (f.n() != P.n())
        throw DimensionError("meets_indeterminacy: map and point dimensions differ");

    if (f.is_monomial()) {
        // Valuation bookkeeping on a coprime factor basis: for single-monomial
        // forms c_i * x^{B_i} the substituted section is c_i * prod_j P_j^{B_ij},
        // so its order at any place is a linear combination of coordinate and
        // coefficient orders.  No products are expanded.
        int n = P.n();
        std::vector<UniPoly> inputs;
        // input index per coordinate / per coefficient; -1 when absent
        std::vector<int> coord_input(static_cast<std::size_t>(n + 1), -1);
        std::vector<int> coeff_input(static_cast<std::size_t>(n + 1), -1);
        std::vector<bool> coord_zero(static_cast<std::size_t>(n + 1), false);
        std::vector<long> coord_inf(static_cast<std::size_t>(n + 1), 0);
        std::vector<long> coeff_inf(static_cast<std::size_t>(n + 1), 0);

        for (int j = 0; j <= n; ++j) {
            const BinaryForm& c = P.coord(j);
            if (c.is_zero()) {
                coord_zero[static_cast<std::size_t>(j)] = true;
                continue;
            }
            coord_inf[static_cast<std::size_t>(j)] = c.t1_valuation();
            UniPoly u = c.dehomogenize();
            if (!u.is_constant()) {
                coord_input[static_cast<std::size_t>(j)] = static_cast<int>(inputs.size());
                inputs.push_back(u);
            }
        }
        for (int i = 0; i <= n; ++i) {
            const BinaryForm& c = f.form(i).begin()->second;
            coeff_inf[static_cast<std::size_t>(i)] = c.t1_valuation();
            UniPoly u = c.dehomogenize();
            if (!u.is_constant()) {
                coeff_input[static_cast<std::size_t>(i)] = static_cast<int>(inputs.size());
                inputs.push_back(u);
            }
        }

        RefinedBasis rb = refine_factors(inputs);

        auto min_order = [&](auto order_of_coord, auto order_of_coeff) -> long {
            long best = kInfiniteMult;
            for (int i = 0; i <= n; ++i) {
                const XMono& mono = f.form(i).begin()->first;
                long total = order_of_coeff(i);
                for (int j = 0; j <= n && total < kInfiniteMult; ++j) {
                    int b = mono[static_cast<std::size_t>(j)];
                    if (b == 0) continue;
                    if (coord_zero[static_cast<std::size_t>(j)]) {
                        total = kInfiniteMult;
                        break;
                    }
                    total += static_cast<long>(b) * order_of_coord(j);
                }
                best = std::min(best, total);
            }
            return best;
        };

        for (std::size_t k = 0; k < rb.basis.size(); ++k) {
            long m = min_order(
                [&](int j) -> long {
                    int idx = coord_input[static_cast<std::size_t>(j)];
                    return idx < 0 ? 0 : rb.exponents[static_cast<std::size_t>(idx)][k];
                },
                [&](int i) -> long {
                    int idx = coeff_input[static_cast<std::size_t>(i)];
                    return idx < 0 ? 0 : rb.exponents[static_cast<std::size_t>(idx)][k];
                });
            if (m >= 1) return true;
        }
        long at_inf = min_order([&](int j) { return coord_inf[static_cast<std::size_t>(j)]; },
                                [&](int i) { return coeff_inf[static_cast<std::size_t>(i)]; });
        return at_inf >= 1;
    }

    EvalResult ev = evaluate(f, P);
    return ev.indeterminacy_hit() || ev.cancellation > 0;
}

} // namespace ffdyn
