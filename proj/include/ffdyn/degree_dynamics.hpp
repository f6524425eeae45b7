#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffdyn/budgets.hpp"
#include "ffdyn/rational.hpp"
#include "ffdyn/selfmap.hpp"

namespace ffdyn {

// Degrees of the iterates f^1..f^M after removing common factors.
// d[m-1] is the x-degree of f^m and e[m-1] its coefficient degree in t.
// Entries are exact by construction (composition plus certified content
// removal); `exact` records that certificate per entry so downstream
// consumers can surface provenance.
struct DegreeSequence {
    std::vector<long> d;
    std::vector<long> e;
    std::vector<bool> exact;
    bool truncated = false;
    std::string truncated_reason;

    int length() const { return static_cast<int>(d.size()); }
};

// Memoized iterates f^1..f^m built incrementally (f^{m+1} = f composed with
// f^m).  Budgets stop construction before an iterate would exceed the degree
// or coefficient-size caps; get() returns nullptr for iterates past the cap.
class IterateTable {
  public:
    IterateTable(SelfMap f, Budgets budgets = {});

    // Iterate f^m (m >= 1), or nullptr if budgets prevent building it.
    const SelfMap* get(int m);
    const SelfMap& base() const { return base_; }

    int computed_to() const { return static_cast<int>(powers_.size()); }
    bool truncated() const { return truncated_; }
    const std::string& truncated_reason() const { return reason_; }

  private:
    bool extend();

    SelfMap base_;
    std::vector<SelfMap> powers_; // powers_[m-1] = f^m
    Budgets budgets_;
    bool truncated_ = false;
    std::string reason_;
};

// Degree sequence of f^1..f^M.  Stops early (with the truncation flag set)
// when an iterate would exceed the budgets.
DegreeSequence degree_sequence(const SelfMap& f, int M, const Budgets& budgets = {});
DegreeSequence degree_sequence(IterateTable& table, int M);

// Degree sequence of a monomial map via exponent-matrix powers, reducing by
// column minima after every product.  No budgets needed: entries stay long.
DegreeSequence monomial_degree_sequence(const MonomialMap& map, int M);

// Estimate of the dynamical degree from a degree sequence.
//   roots[m-1]  = d_m^(1/m)
//   ratios[m-1] = d_{m+1} / d_m
//   window_*    = limsup / liminf of the trailing half of the ratio series
//   final       = the exact value when certified, else the last ratio
//                 (last root when only one entry exists); never below 1
//   exact       = set when the sequence certifies its limit: eventually
//                 periodic (bounded, so the limit is 1) or geometric with
//                 ratio >= 1 (the limit is that ratio)
struct DegreeEstimate {
    std::vector<double> roots;
    std::vector<double> ratios;
    double final = 1.0;
    double window_limsup = 1.0;
    double window_liminf = 1.0;
    std::optional<Rational> exact;
    std::string method; // "periodic", "geometric", or "window"
};

DegreeEstimate delta_estimate(const DegreeSequence& seq);

// True when d_{m+k} <= d_m * d_k for every in-range pair (m, k).
bool is_submultiplicative(const DegreeSequence& seq);

} // namespace ffdyn
