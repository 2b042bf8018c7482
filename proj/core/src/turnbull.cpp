#include "uncervals/turnbull.hpp"

#include <algorithm>
#include <cmath>

namespace uncervals {
namespace detail {

namespace {

// A position on the endpoint order structure: (value, after) where after=1
// means "just past value". The open left endpoint of (l, u] sits at (l, 1),
// every closed endpoint at (v, 0).
struct Key {
    double value;
    int after;
    friend bool operator<(const Key& a, const Key& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.after < b.after;
    }
    friend bool operator<=(const Key& a, const Key& b) { return !(b < a); }
};

struct Endpoint {
    Key key;
    bool is_left;
};

struct RowKeys {
    Key left;
    Key right;
};

RowKeys row_keys(const IntervalObservation& o) {
    if (is_exact(o)) return {{o.l, 0}, {o.l, 0}};
    return {{o.l, 1}, {o.u, 0}};
}

}  // namespace

TurnbullStructure turnbull_structure(const Dataset& data) {
    if (data.empty()) throw numeric_error("turnbull: empty dataset");

    std::vector<RowKeys> rows;
    rows.reserve(data.size());
    std::vector<Endpoint> points;
    points.reserve(2 * data.size());
    for (const auto& o : data.observations) {
        const RowKeys rk = row_keys(o);
        rows.push_back(rk);
        points.push_back({rk.left, true});
        points.push_back({rk.right, false});
    }
    std::sort(points.begin(), points.end(), [](const Endpoint& a, const Endpoint& b) {
        if (a.key.value != b.key.value) return a.key.value < b.key.value;
        if (a.key.after != b.key.after) return a.key.after < b.key.after;
        return a.is_left && !b.is_left;  // left endpoints first at ties
    });

    // A maximal intersection is a left endpoint immediately followed by a
    // right endpoint in the sorted sequence.
    TurnbullStructure s;
    std::vector<Key> left_keys, right_keys;
    for (std::size_t k = 0; k + 1 <= points.size(); ++k) {
        if (!points[k].is_left) continue;
        if (k + 1 < points.size() && !points[k + 1].is_left) {
            left_keys.push_back(points[k].key);
            right_keys.push_back(points[k + 1].key);
            s.support.push_back({points[k].key.value, points[k].key.after == 1,
                                 points[k + 1].key.value});
        }
    }
    if (s.support.empty()) throw numeric_error("turnbull: no maximal intersection");

    s.ranges.reserve(data.size());
    for (const auto& rk : rows) {
        // Intersections are sorted in both endpoints, so containment in
        // (l, u] is a contiguous index range.
        const auto lo_it = std::lower_bound(left_keys.begin(), left_keys.end(), rk.left);
        const auto hi_it = std::upper_bound(right_keys.begin(), right_keys.end(), rk.right);
        const int lo = static_cast<int>(lo_it - left_keys.begin());
        const int hi = static_cast<int>(hi_it - right_keys.begin()) - 1;
        if (lo > hi) throw numeric_error("turnbull: observation contains no intersection");
        s.ranges.emplace_back(lo, hi);
    }
    return s;
}

EmResult turnbull_em(const std::vector<std::pair<int, int>>& ranges, std::size_t n_support,
                     const std::vector<double>& weights, double tol, int max_iter) {
    const std::size_t n = ranges.size();
    if (weights.size() != n) throw numeric_error("turnbull_em: weight size mismatch");
    double total_weight = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w)) throw numeric_error("turnbull_em: bad weight");
        total_weight += w;
    }
    if (!(total_weight > 0.0)) throw numeric_error("turnbull_em: all weights zero");

    EmResult r;
    r.masses.assign(n_support, 1.0 / static_cast<double>(n_support));
    std::vector<double> prefix(n_support + 1), coeff(n_support + 1);

    for (int iter = 0; iter < max_iter; ++iter) {
        prefix[0] = 0.0;
        for (std::size_t j = 0; j < n_support; ++j) prefix[j + 1] = prefix[j] + r.masses[j];

        // Self-consistency update via a difference array over the per-row
        // containment ranges.
        std::fill(coeff.begin(), coeff.end(), 0.0);
        double loglik = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto [lo, hi] = ranges[i];
            const double denom = prefix[hi + 1] - prefix[lo];
            if (!(denom > 0.0)) throw numeric_error("turnbull_em: zero-probability row");
            loglik += weights[i] * std::log(denom);
            coeff[lo] += weights[i] / denom;
            coeff[hi + 1] -= weights[i] / denom;
        }
        r.loglik_trace.push_back(loglik);

        double change = 0.0, run = 0.0, sum = 0.0;
        for (std::size_t j = 0; j < n_support; ++j) {
            run += coeff[j];
            const double next = r.masses[j] * run / total_weight;
            change = std::max(change, std::abs(next - r.masses[j]));
            r.masses[j] = next;
            sum += next;
        }
        for (auto& m : r.masses) m /= sum;  // exact up to rounding already

        r.iterations = iter + 1;
        r.final_change = change;
        if (change < tol) {
            r.converged = true;
            break;
        }
    }
    return r;
}

}  // namespace detail

void TurnbullFit::rebuild() {
    finite_breaks_.clear();
    cum_mass_.clear();
    double cum = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) {
        if (std::isinf(support[j].right)) break;  // tail mass never enters finite F
        cum += masses[j];
        finite_breaks_.push_back(support[j].right);
        cum_mass_.push_back(cum);
    }
}

double TurnbullFit::cdf(double t, std::span<const double>) const {
    if (t < 0.0) return 0.0;
    if (std::isinf(t)) return 1.0;
    const auto it = std::upper_bound(finite_breaks_.begin(), finite_breaks_.end(), t);
    if (it == finite_breaks_.begin()) return 0.0;
    return cum_mass_[static_cast<std::size_t>(it - finite_breaks_.begin()) - 1];
}

double TurnbullFit::invert_survival(double q, std::span<const double>, double) const {
    if (q >= 1.0) return 0.0;
    for (std::size_t k = 0; k < finite_breaks_.size(); ++k) {
        if (1.0 - cum_mass_[k] <= q) return finite_breaks_[k];
    }
    return kInf;
}

TurnbullFit turnbull_fit(const Dataset& data, double tol, int max_iter) {
    bool any_finite = false;
    for (const auto& o : data.observations)
        if (std::isfinite(o.u)) any_finite = true;
    if (!any_finite) throw numeric_error("turnbull: no finite interval in data");

    auto structure = detail::turnbull_structure(data);
    const std::vector<double> weights(data.size(), 1.0);
    auto em = detail::turnbull_em(structure.ranges, structure.support.size(), weights, tol,
                                  max_iter);

    TurnbullFit fit;
    fit.support = std::move(structure.support);
    fit.masses = std::move(em.masses);
    fit.loglik_trace = std::move(em.loglik_trace);
    fit.iterations = em.iterations;
    fit.final_change = em.final_change;
    fit.converged = em.converged;
    fit.rebuild();
    fit.set_default_t_max(10.0 * data.max_finite_endpoint());
    return fit;
}

}  // namespace uncervals
