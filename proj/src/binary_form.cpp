#include "ffdyn/binary_form.hpp"

#include <sstream>

#include "ffdyn/errors.hpp"
#include "ffdyn/kronecker.hpp"

namespace ffdyn {

namespace {

// Dense integer image of the coefficients over the support window [lo, hi];
// scale is the lcm of the denominators.
std::vector<Integer> dense_integer_window(const std::vector<std::pair<int, Rational>>& terms,
                                          Integer& scale) {
    scale = 1;
    for (const auto& [i, c] : terms)
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
    int lo = terms.front().first;
    std::vector<Integer> v(static_cast<std::size_t>(terms.back().first - lo) + 1, Integer(0));
    for (const auto& [i, c] : terms)
        v[static_cast<std::size_t>(i - lo)] = c.get_num() * (scale / c.get_den());
    return v;
}

bool dense_enough(const std::vector<std::pair<int, Rational>>& terms) {
    return terms.size() >= 32 &&
           static_cast<std::size_t>(terms.back().first - terms.front().first) <
               2 * terms.size();
}

} // namespace

BinaryForm BinaryForm::zero(int degree) {
    BinaryForm f;
    f.degree_ = degree;
    return f;
}

BinaryForm BinaryForm::from_unipoly(const UniPoly& u, int degree) {
    BinaryForm f;
    f.degree_ = degree;
    if (u.is_zero()) return f;
    if (u.degree() > degree) throw DimensionError("from_unipoly: degree exceeds target");
    // coefficient of t^j lands at i = D - j; iterate descending j for ascending i
    for (int j = u.degree(); j >= 0; --j)
        if (u.coeff(j) != 0) f.terms_.emplace_back(degree - j, u.coeff(j));
    return f;
}

BinaryForm BinaryForm::term(int degree, int i, const Rational& coeff) {
    BinaryForm f;
    f.degree_ = degree;
    if (i < 0 || i > degree) throw DimensionError("term: exponent out of range");
    if (coeff != 0) f.terms_.emplace_back(i, coeff);
    return f;
}

Rational BinaryForm::coeff(int i) const {
    for (const auto& [e, c] : terms_)
        if (e == i) return c;
    return Rational(0);
}

UniPoly BinaryForm::dehomogenize() const {
    if (terms_.empty()) return UniPoly::zero();
    std::vector<Rational> c(static_cast<std::size_t>(degree_ - terms_.front().first) + 1,
                            Rational(0));
    for (const auto& [i, a] : terms_) c[static_cast<std::size_t>(degree_ - i)] = a;
    return UniPoly(std::move(c));
}

int BinaryForm::t1_valuation() const {
    if (terms_.empty()) throw ZeroInputError("t1_valuation: zero form");
    return terms_.front().first;
}

int BinaryForm::t0_valuation() const {
    if (terms_.empty()) throw ZeroInputError("t0_valuation: zero form");
    return degree_ - terms_.back().first;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
    if (degree_ != o.degree_) throw DimensionError("BinaryForm add: degree mismatch");
    BinaryForm f;
    f.degree_ = degree_;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j >= o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            f.terms_.push_back(terms_[i++]);
        } else if (i >= terms_.size() || o.terms_[j].first < terms_[i].first) {
            f.terms_.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].second + o.terms_[j].second;
            if (s != 0) f.terms_.emplace_back(terms_[i].first, s);
            ++i, ++j;
        }
    }
    return f;
}

BinaryForm BinaryForm::operator-() const {
    BinaryForm f(*this);
    for (auto& [i, c] : f.terms_) c = -c;
    return f;
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
    BinaryForm f;
    f.degree_ = degree_ + o.degree_;
    if (terms_.empty() || o.terms_.empty()) return f;
    if (dense_enough(terms_) && dense_enough(o.terms_)) {
        // one big integer multiplication instead of a quadratic coefficient loop
        Integer sa, sb;
        std::vector<Integer> va = dense_integer_window(terms_, sa);
        std::vector<Integer> vb = dense_integer_window(o.terms_, sb);
        std::vector<Integer> conv = convolve_integer(va, vb);
        Integer scale = sa * sb;
        int base = terms_.front().first + o.terms_.front().first;
        for (std::size_t k = 0; k < conv.size(); ++k)
            if (conv[k] != 0)
                f.terms_.emplace_back(base + static_cast<int>(k), make_rational(conv[k], scale));
        return f;
    }
    // dense accumulator over the (usually short) support window
    int lo = terms_.front().first + o.terms_.front().first;
    int hi = terms_.back().first + o.terms_.back().first;
    std::vector<Rational> acc(static_cast<std::size_t>(hi - lo) + 1, Rational(0));
    for (const auto& [i, a] : terms_)
        for (const auto& [j, b] : o.terms_) acc[static_cast<std::size_t>(i + j - lo)] += a * b;
    for (int k = lo; k <= hi; ++k)
        if (acc[static_cast<std::size_t>(k - lo)] != 0)
            f.terms_.emplace_back(k, std::move(acc[static_cast<std::size_t>(k - lo)]));
    return f;
}

BinaryForm BinaryForm::operator*(const Rational& a) const {
    if (a == 0) return zero(degree_);
    BinaryForm f(*this);
    for (auto& [i, c] : f.terms_) c *= a;
    return f;
}

BinaryForm BinaryForm::pow(int k) const {
    if (k < 0) throw DimensionError("pow: negative exponent");
    if (k == 0) return constant(Rational(1));
    if (is_zero()) return zero(degree_ * k);
    if (terms_.size() == 1) {
        const auto& [i, c] = terms_.front();
        return term(degree_ * k, i * k, rat_pow(c, static_cast<unsigned long>(k)));
    }
    BinaryForm base(*this), out = constant(Rational(1));
    int e = k;
    while (e) {
        if (e & 1) out = out * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return out;
}

BinaryForm BinaryForm::exact_div(const BinaryForm& o) const {
    if (o.is_zero()) throw ZeroInputError("BinaryForm exact_div: zero divisor");
    if (is_zero()) return zero(degree_ - o.degree_);
    if (t1_valuation() < o.t1_valuation())
        throw Error("BinaryForm exact_div: divisor has larger t1 power");
    UniPoly q = dehomogenize().exact_div(o.dehomogenize());
    return from_unipoly(q, degree_ - o.degree_);
}

Rational BinaryForm::eval_affine(const Rational& a) const {
    return dehomogenize().eval(a);
}

BinaryForm BinaryForm::pivot_normalized() const {
    if (terms_.empty()) return *this;
    return *this * (Rational(1) / terms_.front().second);
}

std::size_t BinaryForm::coeff_bits() const {
    std::size_t total = 0;
    for (const auto& [i, c] : terms_) total += bit_size(c);
    return total;
}

std::string BinaryForm::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_to_string(c) << ")";
        if (degree_ - i > 0) os << "*t0^" << (degree_ - i);
        if (i > 0) os << "*t1^" << i;
    }
    return os.str();
}

BinaryForm gcd_binaryform(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero() && b.is_zero()) return BinaryForm::zero(0);
    if (a.is_zero()) return b.pivot_normalized();
    if (b.is_zero()) return a.pivot_normalized();
    int s = std::min(a.t1_valuation(), b.t1_valuation());
    UniPoly g = gcd_unipoly(a.dehomogenize(), b.dehomogenize());
    return BinaryForm::from_unipoly(g, g.degree() + s);
}

} // namespace ffdyn
