#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffdyn/binary_form.hpp"
#include "ffdyn/point.hpp"

namespace ffdyn {

// Exponent vector over the projective variables x_0..x_n.
using XMono = std::vector<int>;

// One coordinate of a self-map: a sum of x-monomials of a common total
// degree, each with a binary-form coefficient of a common degree in (t0,t1).
using CoordForm = std::map<XMono, BinaryForm>;

// What the canonicalization divided out of a raw form tuple.
struct ContentRemoved {
    int x_degree = 0; // total x-degree of the removed common factor
    int t_degree = 0; // t-degree of the removed common factor
};

// A square matrix of monomial exponents: row i gives the exponents of the
// i-th coordinate x^{B[i]}.  Rows all sum to the same degree and every
// column has a zero entry (no common monomial factor).  Iteration is matrix
// multiplication followed by subtracting column minima.
class MonomialMap {
  public:
    // Validates equal row sums, then subtracts column minima.
    static MonomialMap from_matrix(std::vector<std::vector<int>> rows);

    int n() const { return static_cast<int>(rows_.size()) - 1; }
    int degree() const;
    const std::vector<std::vector<int>>& rows() const { return rows_; }

    // this∘other as exponent matrices (product, then column-min reduction).
    MonomialMap after(const MonomialMap& other) const;

    bool operator==(const MonomialMap& o) const { return rows_ == o.rows_; }

  private:
    MonomialMap() = default;
    std::vector<std::vector<int>> rows_;
};

// A self-map of P^n over Q(t), written as n+1 coordinate forms that are
// homogeneous of a common degree d in x and of a common degree e in (t0,t1),
// with no common factor.  Canonical scaling: the first x-monomial of the
// first nonzero coordinate has a binary-form coefficient whose first nonzero
// entry is 1.
class SelfMap {
  public:
    // Validate and canonicalize raw coordinate forms: checks a common total
    // x-degree across all monomials of all nonzero forms (DimensionError
    // otherwise, AllZeroError if every form is zero), pads binary-form
    // coefficients to their common maximal degree, divides out the full
    // common factor, and rescales.  Removal is exact: monomial content,
    // then the coefficient gcd, then either a specialization certificate of
    // coprimality or a multivariate gcd.
    static SelfMap from_forms(int n, std::vector<CoordForm> raw);

    static SelfMap identity(int n);

    int n() const { return static_cast<int>(forms_.size()) - 1; }
    int x_degree() const { return d_; }
    int t_degree() const { return e_; }
    const std::vector<CoordForm>& forms() const { return forms_; }
    const CoordForm& form(int i) const { return forms_[static_cast<std::size_t>(i)]; }
    const ContentRemoved& content_removed() const { return removed_; }

    bool is_identity() const;
    // True when every coordinate form is a single x-monomial.
    bool is_monomial() const;
    // Exponent matrix when is_monomial() and every coefficient is constant
    // in t; nullopt otherwise.
    std::optional<MonomialMap> as_monomial_map() const;
    static SelfMap from_monomial_map(const MonomialMap& m);

    bool operator==(const SelfMap& o) const { return forms_ == o.forms_; }
    bool operator!=(const SelfMap& o) const { return !(*this == o); }

    std::size_t coeff_bits() const;
    std::string to_string() const;

  private:
    SelfMap() = default;
    std::vector<CoordForm> forms_;
    int d_ = 0;
    int e_ = 0;
    ContentRemoved removed_;
};

// Result of applying a self-map to a point.  When the point's section passes
// entirely through the indeterminacy locus the image is absent; otherwise
// `cancellation` records (d * height(P) + e) - height(image) >= 0, the drop
// caused by dividing out the common factor of the substituted sections.
struct EvalResult {
    std::optional<Point> image;
    int cancellation = 0;
    bool indeterminacy_hit() const { return !image.has_value(); }
};

// Substitute the point's coordinate sections into each form of f.
// DimensionError if ambient dimensions differ.
EvalResult evaluate(const SelfMap& f, const Point& P);

// f after g (apply g first).  Substitutes g's coordinates into f, then
// canonicalizes; x-degrees multiply and t-degrees combine as
// e_f + d_f * e_g, minus whatever common factor cancels.
SelfMap compose(const SelfMap& f, const SelfMap& g);

// True iff the section of P meets the common zero locus of the coordinate
// forms of f: the substituted coordinate sections acquire a common factor
// (equivalently the height drops strictly below d * height(P) + e, or the
// image is undefined at some parameter value).  Exact.  For maps whose
// coordinates are single monomials this runs by valuation bookkeeping on a
// coprime factor basis instead of expanding products.
bool meets_indeterminacy(const SelfMap& f, const Point& P);

} // namespace ffdyn
