#include "ffdyn/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "ffdyn/errors.hpp"

namespace ffdyn {

namespace {

bool divides_mono(const MPoly::Mono& d, const MPoly::Mono& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

MPoly::Mono sub_mono(const MPoly::Mono& a, const MPoly::Mono& b) {
    MPoly::Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

} // namespace

MPoly MPoly::constant(int nvars, const Rational& c) {
    MPoly p(nvars);
    if (c != 0) p.terms_.emplace(Mono(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

MPoly MPoly::monomial(int nvars, Mono mono, const Rational& c) {
    if (static_cast<int>(mono.size()) != nvars) throw DimensionError("MPoly: bad monomial size");
    MPoly p(nvars);
    if (c != 0) p.terms_.emplace(std::move(mono), c);
    return p;
}

MPoly MPoly::variable(int nvars, int var) {
    Mono m(static_cast<std::size_t>(nvars), 0);
    m[static_cast<std::size_t>(var)] = 1;
    return monomial(nvars, std::move(m), Rational(1));
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Mono& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

int MPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<std::size_t>(var)]);
    return d;
}

int MPoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

const Rational& MPoly::leading_coeff() const {
    if (terms_.empty()) throw ZeroInputError("MPoly: leading coefficient of zero");
    return terms_.rbegin()->second;
}

void MPoly::add_term(const Mono& mono, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(mono, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("MPoly: variable count mismatch");
    MPoly r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("MPoly: variable count mismatch");
    MPoly r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("MPoly: variable count mismatch");
    MPoly r(nvars_);
    Mono m(static_cast<std::size_t>(nvars_));
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

MPoly MPoly::operator*(const Rational& c) const {
    if (c == 0) return MPoly(nvars_);
    MPoly r(*this);
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

MPoly MPoly::pow(int k) const {
    if (k < 0) throw DimensionError("MPoly: negative exponent");
    MPoly out = constant(nvars_, Rational(1));
    MPoly base(*this);
    while (k) {
        if (k & 1) out = out * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return out;
}

MPoly MPoly::exact_div(const MPoly& o) const {
    if (o.is_zero()) throw ZeroInputError("MPoly: division by zero");
    if (nvars_ != o.nvars_) throw DimensionError("MPoly: variable count mismatch");
    MPoly q(nvars_), r(*this);
    const auto& [lm, lc] = *o.terms_.rbegin();
    while (!r.terms_.empty()) {
        const auto& [rm, rc] = *r.terms_.rbegin();
        if (!divides_mono(lm, rm)) throw Error("MPoly: division not exact");
        Mono qm = sub_mono(rm, lm);
        Rational qc = rc / lc;
        q.add_term(qm, qc);
        for (const auto& [m, c] : o.terms_) {
            Mono t(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) t[i] = m[i] + qm[i];
            r.add_term(t, -c * qc);
        }
    }
    return q;
}

std::map<int, MPoly> MPoly::as_univariate(int var) const {
    std::map<int, MPoly> parts;
    for (const auto& [m, c] : terms_) {
        int e = m[static_cast<std::size_t>(var)];
        auto it = parts.find(e);
        if (it == parts.end()) it = parts.emplace(e, MPoly(nvars_)).first;
        Mono rest = m;
        rest[static_cast<std::size_t>(var)] = 0;
        it->second.add_term(rest, c);
    }
    return parts;
}

MPoly MPoly::from_univariate(int nvars, int var, const std::map<int, MPoly>& parts) {
    MPoly r(nvars);
    for (const auto& [e, p] : parts)
        for (const auto& [m, c] : p.terms()) {
            MPoly::Mono t = m;
            t[static_cast<std::size_t>(var)] += e;
            r.add_term(t, c);
        }
    return r;
}

UniPoly MPoly::to_unipoly(int var) const {
    if (terms_.empty()) return UniPoly::zero();
    std::vector<Rational> c(static_cast<std::size_t>(degree_in(var)) + 1, Rational(0));
    for (const auto& [m, v] : terms_) {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (static_cast<int>(i) != var && m[i] != 0)
                throw DimensionError("MPoly: not univariate in the requested variable");
        c[static_cast<std::size_t>(m[static_cast<std::size_t>(var)])] = v;
    }
    return UniPoly(std::move(c));
}

MPoly MPoly::from_unipoly(int nvars, int var, const UniPoly& u) {
    MPoly r(nvars);
    Mono m(static_cast<std::size_t>(nvars), 0);
    for (int j = 0; j <= u.degree(); ++j) {
        m[static_cast<std::size_t>(var)] = j;
        r.add_term(m, u.coeff(j));
    }
    return r;
}

std::size_t MPoly::coeff_bits() const {
    std::size_t total = 0;
    for (const auto& [m, c] : terms_) total += bit_size(c);
    return total;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_to_string(it->second) << ")";
        for (std::size_t i = 0; i < it->first.size(); ++i)
            if (it->first[i] > 0) {
                os << "*" << names[i];
                if (it->first[i] > 1) os << "^" << it->first[i];
            }
    }
    return os.str();
}

namespace {

// Pseudo-remainder of a by b with respect to var: multiplies a by powers of
// b's leading coefficient so the division stays in the polynomial ring.
MPoly pseudo_rem_mpoly(const MPoly& a, const MPoly& b, int var) {
    int db = b.degree_in(var);
    auto bu = b.as_univariate(var);
    const MPoly& lb = bu.rbegin()->second;
    MPoly r = a;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        auto ru = r.as_univariate(var);
        int dr = ru.rbegin()->first;
        const MPoly& lr = ru.rbegin()->second;
        // r := lb * r - lr * x^(dr-db) * b
        MPoly shift_lr(r.nvars());
        {
            MPoly::Mono m(static_cast<std::size_t>(r.nvars()), 0);
            m[static_cast<std::size_t>(var)] = dr - db;
            shift_lr = lr * MPoly::monomial(r.nvars(), m, Rational(1));
        }
        r = r * lb - shift_lr * b;
    }
    return r;
}

MPoly normalize_lead(const MPoly& p) {
    if (p.is_zero()) return p;
    return p * (Rational(1) / p.leading_coeff());
}

std::vector<int> effective_vars(const MPoly& a, const MPoly& b) {
    std::vector<int> v;
    for (int i = 0; i < a.nvars(); ++i)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) v.push_back(i);
    return v;
}

} // namespace

MPoly content_wrt(const MPoly& a, int var) {
    MPoly c(a.nvars());
    for (const auto& [e, p] : a.as_univariate(var)) {
        c = gcd_mpoly(c, p);
        if (!c.is_zero() && c.is_constant()) break;
    }
    return c;
}

MPoly gcd_mpoly(const MPoly& a, const MPoly& b) {
    if (a.nvars() != b.nvars()) throw DimensionError("MPoly: variable count mismatch");
    if (a.is_zero()) return normalize_lead(b);
    if (b.is_zero()) return normalize_lead(a);

    std::vector<int> vars = effective_vars(a, b);
    if (vars.empty()) return MPoly::constant(a.nvars(), Rational(1));
    if (a.is_constant() || b.is_constant()) return MPoly::constant(a.nvars(), Rational(1));

    if (vars.size() == 1) {
        int v = vars.front();
        UniPoly g = gcd_unipoly(a.to_unipoly(v), b.to_unipoly(v));
        return MPoly::from_unipoly(a.nvars(), v, g);
    }

    // main variable: smallest worst-case degree keeps the PRS short
    int var = vars.front();
    int best = std::max(a.degree_in(var), b.degree_in(var));
    for (int v : vars) {
        int d = std::max(a.degree_in(v), b.degree_in(v));
        if (d < best) {
            best = d;
            var = v;
        }
    }

    MPoly ca = content_wrt(a, var), cb = content_wrt(b, var);
    MPoly cg = gcd_mpoly(ca, cb);
    MPoly f = a.exact_div(ca), g = b.exact_div(cb);
    if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
    while (!g.is_zero()) {
        MPoly r = pseudo_rem_mpoly(f, g, var);
        f = std::move(g);
        if (r.is_zero()) {
            g = std::move(r);
        } else {
            g = r.exact_div(content_wrt(r, var));
        }
    }
    return normalize_lead(cg * f.exact_div(content_wrt(f, var)));
}

} // namespace ffdyn
