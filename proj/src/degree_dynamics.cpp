#include "ffdyn/degree_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffdyn/errors.hpp"

namespace ffdyn {

namespace {

double clamp_ge_one(double x) { return x < 1.0 ? 1.0 : x; }

// Trailing window of the ratio series: the last half, but never empty.
std::size_t window_size(std::size_t n) {
    if (n == 0) return 0;
    return std::max<std::size_t>(1, n / 2);
}

} // namespace

IterateTable::IterateTable(SelfMap f, Budgets budgets)
    : base_(std::move(f)), budgets_(budgets) {}

bool IterateTable::extend() {
    if (truncated_) return false;
    const SelfMap& prev = powers_.empty() ? base_ : powers_.back();
    const int m_next = static_cast<int>(powers_.size()) + 1;

    if (!powers_.empty()) {
        // Composition cost scales with the product degree before content
        // removal, so dense maps are stopped up front when the projected
        // degree is already over budget.  Monomial iterates stay single-term
        // and cheap, so for those the actual degree is checked afterwards.
        const long projected =
            static_cast<long>(base_.x_degree()) * prev.x_degree();
        if (!(base_.is_monomial() && prev.is_monomial()) &&
            projected > budgets_.max_degree) {
            truncated_ = true;
            std::ostringstream os;
            os << "iterate " << m_next << " projected degree " << projected
               << " exceeds budget " << budgets_.max_degree;
            reason_ = os.str();
            return false;
        }
    }

    SelfMap next = powers_.empty() ? base_ : compose(base_, powers_.back());
    if (!powers_.empty() && next.x_degree() == 0) {
        // A non-dominant map can collapse: every coordinate becomes the same
        // monomial and content removal leaves a constant tuple.  Later
        // iterates carry no degree information, so stop here.
        truncated_ = true;
        std::ostringstream os;
        os << "iterate " << m_next << " collapsed to a constant map";
        reason_ = os.str();
        return false;
    }
    if (next.x_degree() > budgets_.max_degree) {
        truncated_ = true;
        std::ostringstream os;
        os << "iterate " << m_next << " degree " << next.x_degree()
           << " exceeds budget " << budgets_.max_degree;
        reason_ = os.str();
        return false;
    }
    if (next.coeff_bits() > budgets_.max_bits) {
        truncated_ = true;
        std::ostringstream os;
        os << "iterate " << m_next << " coefficient size " << next.coeff_bits()
           << " bits exceeds budget " << budgets_.max_bits;
        reason_ = os.str();
        return false;
    }
    powers_.push_back(std::move(next));
    return true;
}

const SelfMap* IterateTable::get(int m) {
    if (m < 1) throw Error("IterateTable::get: iterate index must be >= 1");
    while (static_cast<int>(powers_.size()) < m) {
        if (!extend()) return nullptr;
    }
    return &powers_[static_cast<std::size_t>(m) - 1];
}

DegreeSequence degree_sequence(IterateTable& table, int M) {
    if (M < 1) throw Error("degree_sequence: need at least one iterate");
    DegreeSequence seq;
    for (int m = 1; m <= M; ++m) {
        const SelfMap* fm = table.get(m);
        if (fm == nullptr) {
            seq.truncated = true;
            seq.truncated_reason = table.truncated_reason();
            break;
        }
        if (fm->x_degree() == 0) {
            seq.truncated = true;
            seq.truncated_reason = "map is constant (degree 0)";
            break;
        }
        seq.d.push_back(fm->x_degree());
        seq.e.push_back(fm->t_degree());
        seq.exact.push_back(true);
    }
    return seq;
}

DegreeSequence degree_sequence(const SelfMap& f, int M, const Budgets& budgets) {
    IterateTable table(f, budgets);
    return degree_sequence(table, M);
}

DegreeSequence monomial_degree_sequence(const MonomialMap& map, int M) {
    if (M < 1) throw Error("monomial_degree_sequence: need at least one iterate");
    DegreeSequence seq;
    MonomialMap current = map;
    for (int m = 1; m <= M; ++m) {
        seq.d.push_back(current.degree());
        seq.e.push_back(0);
        seq.exact.push_back(true);
        if (m == M) break;
        try {
            current = map.after(current);
        } catch (const DimensionError&) {
            // exponent-matrix product reduced to a constant map
            seq.truncated = true;
            seq.truncated_reason = "iterate " + std::to_string(m + 1) +
                                   " collapsed to a constant map";
            break;
        } catch (const ResourceLimitError& ex) {
            seq.truncated = true;
            seq.truncated_reason = ex.what();
            break;
        }
    }
    return seq;
}

namespace {

// Smallest period p such that the tail of `d` repeats with period p and at
// least two full periods are visible.  0 when no such period exists.
int detect_period(const std::vector<long>& d) {
    const int L = static_cast<int>(d.size());
    for (int p = 1; 2 * p <= L; ++p) {
        int j = L - p; // smallest index from which d[m] == d[m+p] holds
        while (j > 0 && d[j - 1] == d[j - 1 + p]) --j;
        if (L - j >= 2 * p) return p;
    }
    return 0;
}

bool is_geometric(const std::vector<long>& d) {
    const int L = static_cast<int>(d.size());
    if (L < 3) return false;
    for (int m = 1; m + 1 < L; ++m) {
        if (d[m - 1] * d[m + 1] != d[m] * d[m]) return false;
    }
    return true;
}

} // namespace

DegreeEstimate delta_estimate(const DegreeSequence& seq) {
    DegreeEstimate est;
    const int L = seq.length();
    if (L == 0) {
        est.method = "window";
        return est;
    }
    for (int m = 1; m <= L; ++m) {
        est.roots.push_back(
            std::pow(static_cast<double>(seq.d[m - 1]), 1.0 / m));
    }
    for (int m = 1; m < L; ++m) {
        est.ratios.push_back(static_cast<double>(seq.d[m]) /
                             static_cast<double>(seq.d[m - 1]));
    }

    const std::size_t w = window_size(est.ratios.size());
    if (w > 0) {
        double lo = est.ratios.back(), hi = est.ratios.back();
        for (std::size_t i = est.ratios.size() - w; i < est.ratios.size(); ++i) {
            lo = std::min(lo, est.ratios[i]);
            hi = std::max(hi, est.ratios[i]);
        }
        est.window_liminf = clamp_ge_one(lo);
        est.window_limsup = clamp_ge_one(hi);
    } else {
        est.window_liminf = est.window_limsup = clamp_ge_one(est.roots.back());
    }

    // A single entry certifies the limit only for degree 1: then every
    // d_m <= d_1^m = 1, so the sequence is bounded and the limit is 1.
    if (L == 1) {
        if (seq.d[0] == 1) {
            est.exact = Rational(1);
            est.method = "periodic";
            est.final = 1.0;
        } else {
            est.method = "window";
            est.final = clamp_ge_one(est.roots.back());
        }
        return est;
    }

    if (detect_period(seq.d) > 0) {
        // Eventually periodic means bounded, and bounded degree sequences
        // have dynamical degree exactly 1.
        est.exact = Rational(1);
        est.method = "periodic";
        est.final = 1.0;
        return est;
    }

    if (is_geometric(seq.d)) {
        Rational ratio = make_rational(Integer(seq.d[L - 1]), Integer(seq.d[L - 2]));
        if (ratio >= Rational(1)) {
            est.exact = ratio;
            est.method = "geometric";
            est.final = ratio.get_d();
            return est;
        }
    }

    est.method = "window";
    est.final = clamp_ge_one(est.ratios.back());
    return est;
}

bool is_submultiplicative(const DegreeSequence& seq) {
    const int L = seq.length();
    for (int m = 1; m <= L; ++m) {
        for (int k = 1; m + k <= L; ++k) {
            if (seq.d[m + k - 1] > seq.d[m - 1] * seq.d[k - 1]) return false;
        }
    }
    return true;
}

} // namespace ffdyn
