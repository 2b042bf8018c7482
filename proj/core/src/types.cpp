#include "uncervals/types.hpp"

#include <algorithm>

namespace uncervals {

void validate_observation(const IntervalObservation& o, std::size_t covariate_dim) {
    if (std::isnan(o.l) || std::isnan(o.u)) throw io_error("interval endpoint is NaN");
    if (o.l < 0.0) throw io_error("lower endpoint is negative");
    if (std::isinf(o.l)) throw io_error("lower endpoint is infinite");
    if (o.l > o.u) throw io_error("lower endpoint exceeds upper endpoint");
    if (o.x.size() != covariate_dim) throw io_error("covariate dimension mismatch");
    for (double v : o.x) {
        if (!std::isfinite(v)) throw io_error("non-finite covariate entry");
    }
}

void Dataset::push_back(IntervalObservation o) {
    if (observations.empty() && covariate_dim == 0) covariate_dim = o.x.size();
    validate_observation(o, covariate_dim);
    observations.push_back(std::move(o));
}

void Dataset::validate() const {
    for (const auto& o : observations) validate_observation(o, covariate_dim);
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
    Dataset out;
    out.covariate_dim = covariate_dim;
    out.observations.reserve(indices.size());
    for (std::size_t i : indices) out.observations.push_back(observations.at(i));
    return out;
}

double Dataset::max_finite_endpoint() const {
    double m = 0.0;
    for (const auto& o : observations) {
        if (std::isfinite(o.u)) m = std::max(m, o.u);
        m = std::max(m, o.l);
    }
    return m;
}

}  // namespace uncervals
