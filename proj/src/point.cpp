#include "ffdyn/point.hpp"

#include <sstream>

#include "ffdyn/errors.hpp"

namespace ffdyn {

Point Point::normalize(std::vector<BinaryForm> raw) {
    if (raw.size() < 2) throw DimensionError("Point: need at least 2 coordinates");
    int deg = raw.front().degree();
    bool all_zero = true;
    for (const auto& c : raw) {
        if (c.degree() != deg) throw DimensionError("Point: coordinate degree mismatch");
        if (!c.is_zero()) all_zero = false;
    }
    if (all_zero) throw AllZeroError("Point: all coordinates zero");

    BinaryForm g = BinaryForm::zero(0);
    for (const auto& c : raw) {
        g = gcd_binaryform(g, c);
        if (!g.is_zero() && g.degree() == 0) break;
    }
    Point p;
    p.degree_ = deg - g.degree();
    p.coords_.reserve(raw.size());
    for (auto& c : raw) p.coords_.push_back(c.exact_div(g));

    Rational pivot(0);
    for (const auto& c : p.coords_)
        if (!c.is_zero()) {
            pivot = c.terms().front().second;
            break;
        }
    if (pivot != 1)
        for (auto& c : p.coords_) c = c * (Rational(1) / pivot);
    return p;
}

Point Point::from_rational_functions(const std::vector<RationalFunction>& fs) {
    if (fs.size() < 2) throw DimensionError("Point: need at least 2 coordinates");
    bool all_zero = true;
    UniPoly den = UniPoly::one();
    for (const auto& f : fs)
        if (!f.is_zero()) {
            all_zero = false;
            den = lcm_unipoly(den, f.den());
        }
    if (all_zero) throw AllZeroError("Point: all coordinates zero");

    std::vector<UniPoly> nums;
    nums.reserve(fs.size());
    int max_deg = 0;
    for (const auto& f : fs) {
        UniPoly u = f.is_zero() ? UniPoly::zero() : f.num() * den.exact_div(f.den());
        if (u.degree() > max_deg) max_deg = u.degree();
        nums.push_back(std::move(u));
    }
    std::vector<BinaryForm> raw;
    raw.reserve(nums.size());
    for (const auto& u : nums) raw.push_back(BinaryForm::from_unipoly(u, max_deg));
    return normalize(std::move(raw));
}

std::vector<RationalFunction> Point::to_rational_functions(int chart) const {
    if (chart == -1) {
        for (int i = n(); i >= 0; --i)
            if (!coord(i).is_zero()) {
                chart = i;
                break;
            }
    }
    if (chart < 0 || chart > n()) throw DimensionError("to_rational_functions: chart out of range");
    if (coord(chart).is_zero())
        throw ZeroInputError("to_rational_functions: chart coordinate is zero");
    UniPoly d = coord(chart).dehomogenize();
    std::vector<RationalFunction> fs;
    fs.reserve(coords_.size());
    for (const auto& c : coords_) fs.emplace_back(c.dehomogenize(), d);
    return fs;
}

std::vector<BinaryForm> Point::integer_primitive_coords() const {
    Integer den_lcm = 1;
    for (const auto& c : coords_)
        for (const auto& [i, v] : c.terms()) {
            (void)i;
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
        }
    Integer num_gcd = 0;
    for (const auto& c : coords_)
        for (const auto& [i, v] : c.terms()) {
            (void)i;
            Integer scaled = v.get_num() * (den_lcm / v.get_den());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
        }
    if (num_gcd == 0) num_gcd = 1; // all-zero cannot happen for a valid point
    Rational scale = make_rational(den_lcm, num_gcd);
    std::vector<BinaryForm> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c * scale);
    return out;
}

std::size_t Point::coeff_bits() const {
    std::size_t total = 0;
    for (const auto& c : coords_) total += c.coeff_bits();
    return total;
}

std::string Point::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << " : ";
        os << coords_[i].to_string();
    }
    os << ")";
    return os.str();
}

} // namespace ffdyn
