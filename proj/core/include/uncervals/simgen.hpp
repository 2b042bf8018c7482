#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uncervals/link.hpp"
#include "uncervals/types.hpp"

namespace uncervals::sim {

// Uniform covariates on [min, max] per coordinate. A nonzero rho applies an
// equicorrelated Gaussian copula across coordinates.
struct CovariateLaw {
    std::size_t dim = 1;
    double min = 0.0;
    double max = 1.0;
    double rho = 0.0;
};

// Weibull AFT model shape*log(scale*T) = -r(X) + H with H standard minimum
// extreme value type I, censored by case-II inspections: gaps between
// consecutive inspection epochs are Uniform(0, inspect_length), and the first
// gap starts from 0 under the same law.
struct SimConfig {
    double shape = 2.0;
    double scale = 1.0;
    int inspections = 10;
    double inspect_length = 1.0;
    std::size_t n = 500;
    CovariateLaw covariates;
    Link link;
    std::uint64_t seed = 0;
    // Scenario marker only: the censoring mechanism is identical either way,
    // and subjects with T <= first inspection keep their (0, a1] encoding.
    bool no_left_censoring = false;

    void validate() const;
};

struct SimOutput {
    Dataset dataset;
    std::vector<double> true_times;      // latent T_i, for evaluation only
    std::vector<Censoring> censor_class;
};

// T = (1/scale) * exp((gumbel - r) / shape); the conditional survival is
// S(t, x) = exp(-(scale*t)^shape * e^{r(x)}).
double aft_time(double shape, double scale, double r, double gumbel);

// Closed-form conditional CDF of the latent time; the simulator's own law.
double aft_cdf(double shape, double scale, double r, double t);

std::vector<double> draw_true_times(const SimConfig& config,
                                    const std::vector<std::vector<double>>& x_matrix);

// (l, u] containing T among epochs 0 = a0 < a1 < ... < ak: T <= a1 gives the
// left-censored (0, a1], T > ak the right-censored (ak, +inf).
std::pair<double, double> censor_one(double t, const std::vector<double>& epochs);

Dataset inspect_censor(const std::vector<double>& times,
                       const std::vector<std::vector<double>>& x_matrix,
                       const SimConfig& config);

SimOutput simulate(const SimConfig& config);

// Named presets exposed by the CLI.
//   condcov: shape 2, scale 1, 10 inspections of mean gap 1/2, X ~ U(-2,2),
//            r(X) = -0.3|X|, n = 500.
//   rc30:    shape 2, scale 1, 5 inspections, X ~ U(0,2), r(X) = X, n = 2000;
//            inspect_length tuned so roughly 30% of subjects are
//            right-censored.
SimConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace uncervals::sim
