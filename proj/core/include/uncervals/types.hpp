#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace uncervals {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Input-file problems: missing files, malformed rows, inconsistent columns.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric / model-state problems: invariant violations, failed fits.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One subject: the censoring interval (l, u] and its covariate vector.
// u = +inf encodes right-censoring, l = 0 with finite u left-censoring,
// l == u (within tolerance) an exactly observed event time.
struct IntervalObservation {
    double l = 0.0;
    double u = kInf;
    std::vector<double> x;
};

enum class Censoring { interval, left, right, exact };

// l and u collapse to an exact observation when closer than this relative gap.
inline bool is_exact(double l, double u) {
    if (std::isinf(u)) return false;
    return u - l <= 1e-12 * std::max(1.0, u);
}

inline bool is_exact(const IntervalObservation& o) { return is_exact(o.l, o.u); }

inline Censoring classify(const IntervalObservation& o) {
    if (std::isinf(o.u)) return Censoring::right;
    if (is_exact(o)) return Censoring::exact;
    if (o.l == 0.0) return Censoring::left;
    return Censoring::interval;
}

inline const char* censoring_name(Censoring c) {
    switch (c) {
        case Censoring::interval: return "interval";
        case Censoring::left: return "left";
        case Censoring::right: return "right";
        case Censoring::exact: return "exact";
    }
    return "?";
}

struct Dataset {
    std::vector<IntervalObservation> observations;
    std::size_t covariate_dim = 0;

    std::size_t size() const { return observations.size(); }
    bool empty() const { return observations.empty(); }
    const IntervalObservation& operator[](std::size_t i) const { return observations[i]; }

    void push_back(IntervalObservation o);
    // Enforces 0 <= l <= u, finite covariates, uniform covariate dimension.
    void validate() const;
    Dataset subset(const std::vector<std::size_t>& indices) const;
    // Largest finite endpoint across all rows; 0 if there is none.
    double max_finite_endpoint() const;
};

void validate_observation(const IntervalObservation& o, std::size_t covariate_dim);

}  // namespace uncervals
