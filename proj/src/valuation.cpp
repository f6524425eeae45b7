#include "ffdyn/valuation.hpp"

#include <sstream>

#include "ffdyn/errors.hpp"

namespace ffdyn {

std::string Place::to_string() const {
    if (kind == Kind::Infinity) return "infinity";
    return "t=" + rat_to_string(a);
}

RationalFunction::RationalFunction(UniPoly num, UniPoly den) {
    if (den.is_zero()) throw ZeroInputError("RationalFunction: zero denominator");
    if (num.is_zero()) {
        num_ = UniPoly::zero();
        den_ = UniPoly::one();
        return;
    }
    UniPoly g = gcd_unipoly(num, den);
    num = num.exact_div(g);
    den = den.exact_div(g);
    Rational lc = den.leading_coeff();
    num_ = num * (Rational(1) / lc);
    den_ = den * (Rational(1) / lc);
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}
RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw ZeroInputError("RationalFunction: division by zero");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}
RationalFunction RationalFunction::operator-() const {
    RationalFunction f(*this);
    f.num_ = -f.num_;
    return f;
}

std::string RationalFunction::to_string(const std::string& var) const {
    if (is_polynomial()) return num_.to_string(var);
    std::ostringstream os;
    os << "(" << num_.to_string(var) << ")/(" << den_.to_string(var) << ")";
    return os.str();
}

long valuation(const UniPoly& f, const Place& p) {
    if (f.is_zero()) throw ZeroInputError("valuation: zero polynomial");
    if (p.kind == Place::Kind::Infinity) return -static_cast<long>(f.degree());
    return f.multiplicity_at(p.a);
}

long valuation(const RationalFunction& f, const Place& p) {
    if (f.is_zero()) throw ZeroInputError("valuation: zero function");
    return valuation(f.num(), p) - valuation(f.den(), p);
}

} // namespace ffdyn
