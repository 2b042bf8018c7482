#pragma once

#include <optional>
#include <vector>

#include "uncervals/model.hpp"
#include "uncervals/types.hpp"

namespace uncervals {

// Parametric proportional-hazards model with Weibull baseline: cumulative
// hazard (scale*t)^shape * exp(x'beta), so S(t,x) = exp(-(scale*t)^shape *
// e^{x'beta}). Parameters live on the log scale during optimization.
class WeibullPhFit final : public ConditionalCdfModel {
  public:
    double log_scale = 0.0;
    double log_shape = 0.0;
    std::vector<double> beta;
    bool converged = false;
    double final_grad_norm = 0.0;  // of the mean negative log-likelihood
    int iterations = 0;
    // sqrt of the inverse observed-information diagonal for
    // (log_scale, log_shape, beta...); empty when the information matrix
    // could not be inverted.
    std::vector<double> std_errors;

    double scale() const { return std::exp(log_scale); }
    double shape() const { return std::exp(log_shape); }

    double cdf(double t, std::span<const double> x) const override;
    std::string name() const override { return "weibull_ph"; }
};

// Maximizes the censored-data likelihood: interval rows contribute
// log(S(l|x) - S(u|x)), right-censored rows log S(l|x), left-censored rows
// log(1 - S(u|x)), and exact rows the log-density log f(t|x). Non-convergence
// is flagged on the result, never silent; a non-finite likelihood at the
// starting point throws.
WeibullPhFit weibull_ph_fit(const Dataset& data,
                            std::optional<std::vector<double>> init = std::nullopt,
                            double tol = 1e-6, int max_iter = 500);

// Mean negative log-likelihood and its gradient in theta = (log_scale,
// log_shape, beta...). Exposed for gradient checks.
double weibull_ph_nll(const Dataset& data, const std::vector<double>& theta,
                      std::vector<double>* gradient = nullptr);

}  // namespace uncervals
