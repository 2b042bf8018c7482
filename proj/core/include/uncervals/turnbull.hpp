#pragma once

#include <vector>

#include "uncervals/model.hpp"
#include "uncervals/types.hpp"

namespace uncervals {

// One maximal intersection [q, p]: q is a left endpoint (open when taken from
// an interval row, closed when from an exact row), p a right endpoint, with no
// other endpoint strictly between. NPMLE mass lives only on these.
struct SupportInterval {
    double left = 0.0;
    bool left_open = false;
    double right = 0.0;  // +inf for intersections inside right-censored tails
};

// Marginal Turnbull NPMLE. The CDF is the right-continuous step function
// placing each intersection's mass at its right endpoint; the indeterminacy
// of the NPMLE inside a maximal intersection makes any placement there
// equally likely, and the right endpoint matches the (l, u] convention.
class TurnbullFit final : public ConditionalCdfModel {
  public:
    std::vector<SupportInterval> support;
    std::vector<double> masses;
    std::vector<double> loglik_trace;  // one entry per EM iteration
    int iterations = 0;
    double final_change = 0.0;
    bool converged = false;

    double cdf(double t, std::span<const double> x) const override;
    double invert_survival(double q, std::span<const double> x, double t_max) const override;
    std::string name() const override { return "turnbull"; }

    // Recomputes the step representation from support/masses (after edits or
    // deserialization).
    void rebuild();

  private:
    std::vector<double> cum_mass_;        // cumulative mass at finite right endpoints
    std::vector<double> finite_breaks_;   // finite right endpoints, increasing
};

TurnbullFit turnbull_fit(const Dataset& data, double tol = 1e-9, int max_iter = 100000);

namespace detail {

// Per-row contiguous range [lo, hi] of maximal-intersection indices contained
// in that row's censoring interval.
struct TurnbullStructure {
    std::vector<SupportInterval> support;
    std::vector<std::pair<int, int>> ranges;
};

TurnbullStructure turnbull_structure(const Dataset& data);

struct EmResult {
    std::vector<double> masses;
    std::vector<double> loglik_trace;
    int iterations = 0;
    double final_change = 0.0;
    bool converged = false;
};

EmResult turnbull_em(const std::vector<std::pair<int, int>>& ranges, std::size_t n_support,
                     const std::vector<double>& weights, double tol, int max_iter);

}  // namespace detail

}  // namespace uncervals
