#pragma once

#include <span>

#include "uncervals/kernel_turnbull.hpp"
#include "uncervals/model.hpp"
#include "uncervals/oracle.hpp"
#include "uncervals/turnbull.hpp"
#include "uncervals/weibull_ph.hpp"

namespace uncervals {

// Plug-in choice for the conditional CDF fitted on split 1.
struct EstimatorSpec {
    enum class Kind { turnbull, weibull_ph, oracle, kernel_turnbull };
    Kind kind = Kind::weibull_ph;
    double tol = 0.0;   // 0 = per-estimator default
    int max_iter = 0;   // 0 = per-estimator default

    // Oracle parameters (ignored by the fitted estimators).
    double oracle_shape = 2.0;
    double oracle_scale = 1.0;
    Link oracle_link;

    std::vector<double> bandwidths;  // kernel_turnbull only; empty = rule of thumb

    static EstimatorSpec from_name(const std::string& name);
    std::string kind_name() const;
};

ModelPtr fit_estimator(const EstimatorSpec& spec, const Dataset& training);

// inf{t >= 0 : S(t, x) <= q} on [0, t_max]; free-function face of the model
// member for callers holding a spec-level handle.
inline double invert_survival(const ConditionalCdfModel& model, double q,
                              std::span<const double> x, double t_max) {
    return model.invert_survival(q, x, t_max);
}

}  // namespace uncervals
