#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "uncervals/turnbull.hpp"

namespace uncervals {

// Covariate-localized Turnbull: the EM runs with Nadaraya-Watson weights
// (Gaussian product kernel, rule-of-thumb bandwidth per coordinate) around
// the query covariate. The endpoint structure is shared across queries; only
// the weighted EM reruns, with a bounded per-query cache.
class KernelTurnbullModel final : public ConditionalCdfModel {
  public:
    explicit KernelTurnbullModel(Dataset data, std::vector<double> bandwidths = {},
                                 double tol = 1e-7, int max_iter = 3000);

    double cdf(double t, std::span<const double> x) const override;
    double invert_survival(double q, std::span<const double> x, double t_max) const override;
    std::string name() const override { return "kernel_turnbull"; }

    const std::vector<double>& bandwidths() const { return bandwidths_; }
    const Dataset& reference_data() const { return data_; }

  private:
    struct Step {
        std::vector<double> breaks;
        std::vector<double> cum;
    };
    // The weighted EM runs outside the cache lock; entries are shared
    // pointers so a concurrent cache reset cannot invalidate a caller.
    std::shared_ptr<const Step> step_for(std::span<const double> x) const;

    Dataset data_;
    std::vector<double> bandwidths_;
    double tol_;
    int max_iter_;
    detail::TurnbullStructure structure_;
    std::vector<double> finite_rights_;  // per support interval; inf for tails

    mutable std::mutex cache_mutex_;
    mutable std::map<std::vector<double>, std::shared_ptr<const Step>> cache_;
};

// Silverman's rule of thumb, one bandwidth per covariate coordinate.
std::vector<double> rule_of_thumb_bandwidths(const Dataset& data);

}  // namespace uncervals
