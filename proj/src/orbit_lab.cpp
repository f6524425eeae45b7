#include "ffdyn/orbit_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffdyn/errors.hpp"
#include "ffdyn/heights.hpp"

namespace ffdyn {

namespace {

double clamp_ge_one(double x) { return x < 1.0 ? 1.0 : x; }

std::size_t window_size(std::size_t n) {
    if (n == 0) return 0;
    return std::max<std::size_t>(1, n / 2);
}

} // namespace

OrbitRecord orbit(const SelfMap& f, const Point& P, int M, bool keep_points,
                  const Budgets& budgets) {
    if (f.n() != P.n())
        throw DimensionError("orbit: map and point live in different spaces");
    if (M < 0) throw Error("orbit: need a nonnegative number of steps");

    OrbitRecord rec;
    rec.heights.push_back(height_degree(P));
    if (keep_points) rec.points_kept.push_back(P);

    Point current = P;
    for (int m = 1; m <= M; ++m) {
        // The pullback bound h_next <= d*h + e is checked before evaluating,
        // so an over-budget step is never computed.  (Cancellation could in
        // principle bring the actual height back under the budget; the budget
        // trades that continuation for never paying for an oversized step.)
        const long projected =
            static_cast<long>(f.x_degree()) * rec.heights.back() + f.t_degree();
        if (projected > budgets.max_height) {
            rec.truncated = true;
            std::ostringstream os;
            os << "orbit point " << m << " has projected height " << projected
               << ", over the height budget " << budgets.max_height;
            rec.truncated_reason = os.str();
            return rec;
        }
        EvalResult step = evaluate(f, current);
        if (step.indeterminacy_hit()) {
            rec.indeterminacy_hit = m;
            return rec;
        }
        Point next = *step.image;
        const long h = height_degree(next);
        if (next.coeff_bits() > budgets.max_bits) {
            rec.truncated = true;
            std::ostringstream os;
            os << "orbit point " << m << " has coefficient size "
               << next.coeff_bits() << " bits, over the budget "
               << budgets.max_bits;
            rec.truncated_reason = os.str();
            return rec;
        }
        rec.heights.push_back(h);
        rec.cancellations.push_back(step.cancellation);

        if (keep_points) {
            for (std::size_t j = 0; j < rec.points_kept.size(); ++j) {
                if (rec.points_kept[j] == next) {
                    const int pre = static_cast<int>(j);
                    const int p = m - pre;
                    rec.period = std::make_pair(pre, p);
                    // heights and cancellations repeat with period p from
                    // the preperiod on; extend them without re-evaluating
                    for (int k = m + 1; k <= M; ++k) {
                        rec.heights.push_back(
                            rec.heights[static_cast<std::size_t>(k - p)]);
                        rec.cancellations.push_back(
                            rec.cancellations[static_cast<std::size_t>(k - 1 - p)]);
                    }
                    return rec;
                }
            }
            rec.points_kept.push_back(next);
        }
        current = std::move(next);
    }
    return rec;
}

AlphaEstimate alpha_estimate(const OrbitRecord& record) {
    const std::vector<long>& h = record.heights;
    if (h.size() < 2)
        throw TooShortError("alpha estimate needs at least two heights");

    std::vector<long> hp(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) hp[i] = std::max(h[i], 1L);

    AlphaEstimate est;
    for (std::size_t m = 1; m < hp.size(); ++m) {
        est.roots.push_back(
            std::pow(static_cast<double>(hp[m]), 1.0 / static_cast<double>(m)));
        est.ratios.push_back(static_cast<double>(hp[m]) /
                             static_cast<double>(hp[m - 1]));
    }

    const std::size_t w = window_size(est.ratios.size());
    double lo = est.ratios.back(), hi = est.ratios.back();
    for (std::size_t i = est.ratios.size() - w; i < est.ratios.size(); ++i) {
        lo = std::min(lo, est.ratios[i]);
        hi = std::max(hi, est.ratios[i]);
    }
    est.window_liminf = clamp_ge_one(lo);
    est.window_limsup = clamp_ge_one(hi);

    if (record.period.has_value()) {
        // a cycle was found, so the height sequence is eventually periodic,
        // hence bounded, and the growth rate is exactly 1
        est.exact = Rational(1);
        est.method = "periodic";
        est.final = 1.0;
        return est;
    }
    if (h.back() == 0) {
        // height 0 means a constant point, and constant points stay
        // constant, so every later height is 0 as well
        est.exact = Rational(1);
        est.method = "constant";
        est.final = 1.0;
        return est;
    }
    if (hp.size() >= 3) {
        bool geometric = true;
        for (std::size_t m = 1; m + 1 < hp.size(); ++m) {
            if (Integer(hp[m - 1]) * Integer(hp[m + 1]) !=
                Integer(hp[m]) * Integer(hp[m])) {
                geometric = false;
                break;
            }
        }
        if (geometric) {
            Rational ratio =
                make_rational(Integer(hp[hp.size() - 1]), Integer(hp[hp.size() - 2]));
            if (ratio >= Rational(1)) {
                est.exact = ratio;
                est.method = "geometric";
                est.final = ratio.get_d();
                return est;
            }
        }
    }
    est.method = "window";
    est.final = clamp_ge_one(est.ratios.back());
    return est;
}

namespace {

// Depth of the degree sequence used for the dynamical-degree side: deep
// enough to certify geometric or periodic behavior, shallow enough that
// dense high-degree composition stays affordable.
int default_delta_depth(const SelfMap& f) {
    if (f.is_monomial()) return 8;
    if (f.x_degree() <= 1) return 6;
    if (f.n() == 1) return 5;
    if (f.x_degree() == 2) return 4;
    return 3;
}

} // namespace

DeltaReport estimate_delta(const SelfMap& f, int depth, const Budgets& budgets) {
    DeltaReport rep;
    const bool auto_depth = depth <= 0;
    const int use = auto_depth ? default_delta_depth(f) : depth;
    IterateTable table(f, budgets);
    rep.degrees = degree_sequence(table, use);
    rep.estimate = delta_estimate(rep.degrees);
    if (auto_depth && !rep.estimate.exact.has_value() &&
        (f.is_monomial() || f.n() == 1 || f.x_degree() <= 2)) {
        // cheap classes: look a little deeper before settling for a window
        DegreeSequence deeper = degree_sequence(table, use + 3);
        if (deeper.length() > rep.degrees.length()) {
            rep.degrees = deeper;
            rep.estimate = delta_estimate(rep.degrees);
        }
    }
    return rep;
}

InequalityReport check_fundamental_inequality(const SelfMap& f, const Point& P, int M,
                                              double tol, const Budgets& budgets,
                                              int M_delta) {
    InequalityReport rep;
    rep.tol = tol;
    rep.record = orbit(f, P, M, /*keep_points=*/true, budgets);
    rep.alpha = alpha_estimate(rep.record);

    DeltaReport dr = estimate_delta(f, M_delta, budgets);
    rep.degrees = std::move(dr.degrees);
    rep.delta = std::move(dr.estimate);

    rep.alpha_hat = rep.alpha.exact.has_value() ? rep.alpha.exact->get_d()
                                                : rep.alpha.window_limsup;
    rep.delta_hat = rep.delta.exact.has_value() ? rep.delta.exact->get_d()
                                                : rep.delta.window_limsup;
    rep.holds = rep.alpha_hat <= rep.delta_hat + tol;
    return rep;
}

SufficientReport check_sufficient_condition(const SelfMap& f, const Point& P, int M,
                                            const Budgets& budgets) {
    if (f.n() != P.n())
        throw DimensionError("check_sufficient_condition: dimension mismatch");
    if (M < 1) throw Error("check_sufficient_condition: need at least one iterate");

    SufficientReport rep;
    rep.positivity = height_degree(P) >= 1;

    IterateTable table(f, budgets);
    bool met = false;
    int met_at = 0;
    for (int m = 1; m <= M; ++m) {
        const SelfMap* fm = table.get(m);
        if (fm == nullptr) break;
        rep.iterates_available = m;
        if (meets_indeterminacy(*fm, P)) {
            met = true;
            met_at = m;
            break;
        }
        rep.avoidance_certified_to = m;
    }
    rep.certified_to_requested = (rep.avoidance_certified_to == M);

    std::ostringstream os;
    if (met) {
        os << "the point meets the base locus of iterate " << met_at << "; ";
    } else if (rep.iterates_available < M) {
        os << "budgets stopped iterate construction at " << rep.iterates_available
           << " of " << M << " (" << table.truncated_reason() << "); ";
    }
    if (rep.avoidance_certified_to == 0)
        os << "avoidance holds for no iterate";
    else
        os << "avoidance is certified for iterates 1.." << rep.avoidance_certified_to;
    os << "; this finite check cannot certify the asymptotic hypothesis (all m)";
    rep.note = os.str();
    return rep;
}

ScheduleReport check_schedule_premise(const std::vector<long>& schedule) {
    ScheduleReport rep;
    if (schedule.empty()) {
        rep.valid = false;
        rep.note = "empty schedule";
        return rep;
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 1) {
            rep.valid = false;
            rep.note = "schedule entries must be positive iterate indices";
            return rep;
        }
        if (i > 0 && schedule[i] <= schedule[i - 1]) {
            rep.valid = false;
            rep.note = "schedule must be strictly increasing";
            return rep;
        }
    }
    rep.valid = true;
    rep.note = "schedule is strictly increasing and positive; a finite schedule "
               "cannot certify the asymptotic hypothesis (all m)";
    return rep;
}

namespace {

// All exponent vectors over `vars` variables of total degree exactly `deg`,
// in lexicographic order (first variable's exponent decreasing).
void enumerate_monomials(int vars, int deg, XMono& prefix, std::vector<XMono>& out) {
    if (vars == 1) {
        prefix.push_back(deg);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = deg; k >= 0; --k) {
        prefix.push_back(k);
        enumerate_monomials(vars - 1, deg - k, prefix, out);
        prefix.pop_back();
    }
}

UniPoly row_content(const std::vector<UniPoly>& row) {
    UniPoly g = UniPoly::zero();
    for (const UniPoly& u : row) {
        if (u.is_zero()) continue;
        g = g.is_zero() ? u.monic() : gcd_unipoly(g, u);
        if (g.is_constant()) break;
    }
    return g;
}

void divide_row_content(std::vector<UniPoly>& row) {
    UniPoly g = row_content(row);
    if (g.is_zero() || g.is_constant()) return;
    for (UniPoly& u : row) {
        if (!u.is_zero()) u = u.exact_div(g);
    }
}

} // namespace

DensityReport orbit_density_heuristic(const std::vector<Point>& points,
                                      int degree_bound) {
    if (points.size() < 2)
        throw TooFewPointsError("density check needs at least two points");
    if (degree_bound < 1)
        throw Error("density check needs a positive degree bound");
    const int n = points[0].n();
    for (const Point& P : points) {
        if (P.n() != n)
            throw DimensionError("density check: points live in different spaces");
    }

    std::vector<XMono> monos;
    XMono prefix;
    enumerate_monomials(n + 1, degree_bound, prefix, monos);
    const std::size_t cols = monos.size();

    // evaluation matrix: one row per point, one column per monomial; each
    // row is dehomogenized at its own common degree, which only rescales it
    std::vector<std::vector<UniPoly>> matrix;
    matrix.reserve(points.size());
    for (const Point& P : points) {
        std::vector<std::vector<BinaryForm>> powers(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            powers[static_cast<std::size_t>(i)].push_back(
                BinaryForm::constant(Rational(1)));
            for (int k = 1; k <= degree_bound; ++k)
                powers[static_cast<std::size_t>(i)].push_back(
                    powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(k) - 1] *
                    P.coord(i));
        }
        std::vector<UniPoly> row;
        row.reserve(cols);
        for (const XMono& mono : monos) {
            BinaryForm v = BinaryForm::constant(Rational(1));
            for (int i = 0; i <= n; ++i)
                v = v * powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                        mono[static_cast<std::size_t>(i)])];
            row.push_back(v.is_zero() ? UniPoly::zero() : v.dehomogenize());
        }
        divide_row_content(row);
        matrix.push_back(std::move(row));
    }

    // fraction-free row echelon over Q[t], tracking pivot columns
    std::vector<int> pivot_col_of_row;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < matrix.size(); ++c) {
        // pick the lowest-degree nonzero entry in this column as the pivot
        std::size_t best = matrix.size();
        for (std::size_t r = pivot_row; r < matrix.size(); ++r) {
            if (matrix[r][c].is_zero()) continue;
            if (best == matrix.size() ||
                matrix[r][c].degree() < matrix[best][c].degree())
                best = r;
        }
        if (best == matrix.size()) continue;
        std::swap(matrix[pivot_row], matrix[best]);
        for (std::size_t r = pivot_row + 1; r < matrix.size(); ++r) {
            if (matrix[r][c].is_zero()) continue;
            UniPoly a = matrix[pivot_row][c];
            UniPoly b = matrix[r][c];
            for (std::size_t k = 0; k < cols; ++k)
                matrix[r][k] = matrix[r][k] * a - matrix[pivot_row][k] * b;
            divide_row_content(matrix[r]);
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++pivot_row;
    }
    const std::size_t rank = pivot_col_of_row.size();

    DensityReport rep;
    rep.degree_bound = degree_bound;
    if (rank == cols) {
        rep.verdict = DensityVerdict::NotContained;
        return rep;
    }

    // kernel vector: first free column gets 1, other free columns 0, pivot
    // variables solved bottom-up with polynomial scaling (no fractions)
    std::vector<bool> is_pivot_col(cols, false);
    for (int pc : pivot_col_of_row) is_pivot_col[static_cast<std::size_t>(pc)] = true;
    std::size_t free_col = cols;
    for (std::size_t c = 0; c < cols; ++c) {
        if (!is_pivot_col[c]) {
            free_col = c;
            break;
        }
    }

    std::vector<UniPoly> v(cols, UniPoly::zero());
    v[free_col] = UniPoly::one();
    for (std::size_t r = rank; r-- > 0;) {
        const std::size_t pc = static_cast<std::size_t>(pivot_col_of_row[r]);
        UniPoly s = UniPoly::zero();
        for (std::size_t c = pc + 1; c < cols; ++c) {
            if (!v[c].is_zero() && !matrix[r][c].is_zero())
                s = s + matrix[r][c] * v[c];
        }
        const UniPoly& piv = matrix[r][pc];
        for (std::size_t c = 0; c < cols; ++c) {
            if (c != pc && !v[c].is_zero()) v[c] = v[c] * piv;
        }
        v[pc] = UniPoly::zero() - s;
    }
    divide_row_content(v);

    // the witness must vanish at every point; this is exact arithmetic, so
    // anything else is an internal error
    for (const Point& P : points) {
        std::vector<std::vector<BinaryForm>> powers(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            powers[static_cast<std::size_t>(i)].push_back(
                BinaryForm::constant(Rational(1)));
            for (int k = 1; k <= degree_bound; ++k)
                powers[static_cast<std::size_t>(i)].push_back(
                    powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(k) - 1] *
                    P.coord(i));
        }
        UniPoly total = UniPoly::zero();
        for (std::size_t c = 0; c < cols; ++c) {
            if (v[c].is_zero()) continue;
            BinaryForm m = BinaryForm::constant(Rational(1));
            for (int i = 0; i <= n; ++i)
                m = m * powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                        monos[c][static_cast<std::size_t>(i)])];
            if (!m.is_zero()) total = total + m.dehomogenize() * v[c];
        }
        if (!total.is_zero())
            throw Error("density check: witness failed to vanish (internal error)");
    }

    rep.verdict = DensityVerdict::Contained;
    rep.witness_monomials = monos;
    rep.witness_coeffs = std::move(v);
    return rep;
}

} // namespace ffdyn
