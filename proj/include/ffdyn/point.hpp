#pragma once

#include <string>
#include <vector>

#include "ffdyn/binary_form.hpp"
#include "ffdyn/valuation.hpp"

namespace ffdyn {

// A point of P^n over Q(t) in section normal form: n+1 coprime binary forms
// of common degree D.  The canonical representative divides out the gcd of
// the coordinates and scales so the first nonzero coefficient of the first
// nonzero coordinate equals 1; equality is then coordinate-wise.  D is the
// height of the point.
class Point {
  public:
    // Canonicalize raw coordinates of equal degree.  Throws AllZeroError if
    // every input is zero, DimensionError on degree mismatch or < 2 coords.
    static Point normalize(std::vector<BinaryForm> raw);

    // Clear denominators to their lcm, homogenize the resulting polynomials
    // to their common maximal degree with t1-powers, then normalize.
    // Zero entries are allowed; all-zero input throws AllZeroError.
    static Point from_rational_functions(const std::vector<RationalFunction>& fs);

    // Affine coordinates relative to coordinate `chart`: entry i is
    // coords[i]/coords[chart].  Default chart = last nonzero coordinate.
    std::vector<RationalFunction> to_rational_functions(int chart = -1) const;

    int n() const { return static_cast<int>(coords_.size()) - 1; }
    int degree() const { return degree_; }
    const std::vector<BinaryForm>& coords() const { return coords_; }
    const BinaryForm& coord(int i) const { return coords_[static_cast<std::size_t>(i)]; }
    bool is_constant() const { return degree_ == 0; }

    bool operator==(const Point& o) const { return coords_ == o.coords_; }
    bool operator!=(const Point& o) const { return !(*this == o); }

    // The same point rescaled so every coefficient is an integer and the
    // integer content across all coordinates is 1.  Fast-arithmetic input
    // form; not pivot-normalized.
    std::vector<BinaryForm> integer_primitive_coords() const;

    std::size_t coeff_bits() const;
    std::string to_string() const;

  private:
    Point() = default;
    std::vector<BinaryForm> coords_;
    int degree_ = 0;
};

} // namespace ffdyn
