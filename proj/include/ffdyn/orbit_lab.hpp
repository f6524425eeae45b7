#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffdyn/budgets.hpp"
#include "ffdyn/degree_dynamics.hpp"
#include "ffdyn/point.hpp"
#include "ffdyn/rational.hpp"
#include "ffdyn/selfmap.hpp"
#include "ffdyn/unipoly.hpp"

namespace ffdyn {

// Forward orbit of a point: heights h_0..h_M, per-step cancellations, and
// what stopped the orbit early (if anything).
//
//   heights[m]          height of the m-th orbit point
//   cancellations[m-1]  (d * h_{m-1} + e) - h_m for the step into index m
//   indeterminacy_hit   m when the whole section lands in the base locus at
//                       step m; lists then stop at index m-1
//   period              (preperiod j, period p) when orbit point j + p equals
//                       orbit point j; heights continue cyclically
//   points_kept         the distinct orbit points seen (when requested)
struct OrbitRecord {
    std::vector<long> heights;
    std::vector<long> cancellations;
    std::optional<int> indeterminacy_hit;
    std::optional<std::pair<int, int>> period;
    std::vector<Point> points_kept;
    bool truncated = false;
    std::string truncated_reason;
};

OrbitRecord orbit(const SelfMap& f, const Point& P, int M, bool keep_points = true,
                  const Budgets& budgets = {});

// Arithmetic-degree estimate from an orbit's height sequence, using
// h+ = max(h, 1).  Same reading as DegreeEstimate:
//   roots[m-1]  = (h+_m)^(1/m), ratios[m-1] = h+_m / h+_{m-1}
//   exact       is set when the limit is certified: a detected cycle or an
//               eventually constant height sequence forces 1; a geometric
//               h+ sequence with ratio >= 1 forces that ratio
// Throws TooShortError when fewer than two heights are available.
struct AlphaEstimate {
    std::vector<double> roots;
    std::vector<double> ratios;
    double final = 1.0;
    double window_limsup = 1.0;
    double window_liminf = 1.0;
    std::optional<Rational> exact;
    std::string method; // "periodic", "constant", "geometric", or "window"
};

AlphaEstimate alpha_estimate(const OrbitRecord& record);

// Degree sequence plus dynamical-degree estimate for a map alone.  depth <= 0
// picks a class-based default (deeper for cheap map classes) and extends it
// once when no exact certificate emerged; an explicit depth is honored as is.
struct DeltaReport {
    DegreeSequence degrees;
    DegreeEstimate estimate;
};

DeltaReport estimate_delta(const SelfMap& f, int depth = 0, const Budgets& budgets = {});

// One-shot comparison of the arithmetic-degree estimate of an orbit against
// the dynamical-degree estimate of the map: checks
// (upper alpha estimate) <= (delta estimate) + tol.  A false verdict does
// not assert a counterexample; it flags data worth a bug hunt (truncation,
// too-short windows, or an implementation error).
struct InequalityReport {
    AlphaEstimate alpha;
    DegreeEstimate delta;
    OrbitRecord record;
    DegreeSequence degrees;
    double alpha_hat = 1.0; // exact value when certified, else window limsup
    double delta_hat = 1.0; // exact value when certified, else window limsup
    double tol = 1e-2;
    bool holds = true;
};

// M_delta = 0 picks a default depth for the degree sequence (deep enough to
// certify geometric/periodic behavior, shallow enough to stay cheap).
InequalityReport check_fundamental_inequality(const SelfMap& f, const Point& P, int M,
                                              double tol = 1e-2,
                                              const Budgets& budgets = {},
                                              int M_delta = 0);

// Hypotheses of the height-growth criterion, checked as far as exact
// computation allows:
//   positivity               h(P) >= 1
//   avoidance_certified_to   largest m <= M with the orbit start avoiding the
//                            base locus of every iterate f^1..f^m
//   iterates_available       how many iterates the budgets let us build
// Certifying all m <= M is finite evidence only; the asymptotic hypothesis
// (all m) is not machine-checkable and `note` says so.
struct SufficientReport {
    bool positivity = false;
    int avoidance_certified_to = 0;
    int iterates_available = 0;
    bool certified_to_requested = false;
    std::string note;
};

SufficientReport check_sufficient_condition(const SelfMap& f, const Point& P, int M,
                                            const Budgets& budgets = {});

// Finite schedule m_1 < m_2 < ... of iterate indices: validates strict
// growth and positivity, and reports that a finite schedule can never
// certify the asymptotic hypothesis.
struct ScheduleReport {
    bool valid = false;
    std::string note;
};

ScheduleReport check_schedule_premise(const std::vector<long>& schedule);

// Does a degree <= degree_bound hypersurface pass through all the points?
// CONTAINED comes with a witness: the coefficient vector of such a form,
// verified by evaluation at every point.  NOT_CONTAINED means no nonzero
// form of degree exactly degree_bound vanishes on the whole list (lower
// degrees are subsumed: multiply by a power of x_0).  Exact linear algebra
// over Q(t); a heuristic only in the sense that it inspects finitely many
// points of an infinite orbit.
enum class DensityVerdict { Contained, NotContained };

struct DensityReport {
    DensityVerdict verdict = DensityVerdict::NotContained;
    int degree_bound = 0;
    // monomial exponents (degree = degree_bound) and matching coefficients
    // of the witness form, dehomogenized in t; empty when NOT_CONTAINED
    std::vector<XMono> witness_monomials;
    std::vector<UniPoly> witness_coeffs;
};

// Throws TooFewPointsError for fewer than two points, DimensionError on
// mixed ambient dimensions.
DensityReport orbit_density_heuristic(const std::vector<Point>& points, int degree_bound);

} // namespace ffdyn
