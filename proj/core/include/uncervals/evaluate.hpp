#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "uncervals/conformal.hpp"
#include "uncervals/simgen.hpp"
#include "uncervals/smoothing.hpp"

namespace uncervals::eval {

// Lower bound from the plain plug-in quantile F1^{-1}(alpha). When the model
// never reaches level alpha on [0, t_max] (step-function plateau), the bound
// is reported as the horizon with `truncated` set rather than +inf.
struct NaiveLpb {
    double value = 0.0;
    bool truncated = false;
};

NaiveLpb naive_quantile_lpb(const ConditionalCdfModel& model, std::span<const double> x,
                            double alpha, double t_max);

// An LPB construction to evaluate: uncervals (either mode) or the naive
// plug-in quantile. Both fit the estimator on split 1 of the training data so
// that the comparison isolates the calibration step.
struct MethodSpec {
    enum class Kind { uncervals, naive };
    Kind kind = Kind::uncervals;
    conformal::Mode mode = conformal::Mode::estar;
    double b = 1.0;
    double fit_fraction = 0.5;
    EstimatorSpec estimator;

    std::string label() const;
};

struct CoverageReport {
    double alpha = 0.1;
    int replications = 0;
    std::vector<double> per_replication;
    double mean = 0.0;
    double sd = 0.0;
    std::string method_label;
};

// Per replication: simulate a training set, build the method's LPB, simulate
// n_test fresh (X, T), record the fraction with T >= LPB(X) (boundary counts
// as covered).
CoverageReport marginal_coverage(const MethodSpec& method, const sim::SimConfig& config,
                                 double alpha, int replications, std::size_t n_test,
                                 std::uint64_t seed, int threads = 1);

struct ConditionalCoverageCurve {
    SmoothCurve curve;
    double err = 0.0;
};

// Simulates n_eval fresh points, forms the coverage indicators for the given
// LPB, and smooths them against the first covariate by local-logistic
// regression. err is the root mean square deviation of pi_hat from 1-alpha.
ConditionalCoverageCurve conditional_coverage_curve(
    const std::function<double(std::span<const double>)>& lpb, const sim::SimConfig& config,
    double alpha, std::size_t n_eval, std::uint64_t seed);

struct ErrComparisonReport {
    double alpha = 0.1;
    int replications = 0;
    std::vector<double> err_uncervals;
    std::vector<double> err_naive;
    double mean_err_uncervals = 0.0;
    double mean_err_naive = 0.0;
    double sd_err_uncervals = 0.0;
    double sd_err_naive = 0.0;
    ConditionalCoverageCurve last_uncervals;
    ConditionalCoverageCurve last_naive;
};

// The conditional-coverage benchmark: per replication both LPBs share the
// same training data, split, and fitted estimator.
ErrComparisonReport err_comparison(const sim::SimConfig& config, double alpha, int replications,
                                   std::size_t n_eval, const EstimatorSpec& estimator,
                                   double fit_fraction, std::uint64_t seed, int threads = 1);

struct GofReport {
    std::size_t n = 0;
    double statistic = 0.0;
    double p_value = 1.0;
    std::vector<double> phi_star_sorted;  // ECDF jump points for plotting
};

// Uniformity test of Phi*_i = Lambda_i + Uniform(0,1) * (Upsilon_i -
// Lambda_i), each subject randomized on its own row (no index resampling).
GofReport gof_uniformity(const ConditionalCdfModel& model, const Dataset& data,
                         std::uint64_t seed);

struct VcReport {
    int n_points = 0;
    std::uint64_t budget = 0;
    int max_dichotomies = 0;
    bool shattered = false;
};

// Randomized search for a shattered configuration of the sets
// {(l,u,c) : 1{l <= t < u} (t-l) > c} over finite grids of t.
VcReport vc_shatter_search(std::uint64_t budget, int n_points, std::uint64_t seed);

struct UnbiasednessReport {
    std::vector<double> t_grid;
    std::vector<double> mean;      // Monte Carlo mean of I_n(t)
    std::vector<double> se;        // Monte Carlo standard error
    int replications = 0;
};

// Monte Carlo check that E[I_n(t)] = t under the oracle model and
// noninformative inspection censoring.
UnbiasednessReport unbiasedness_check(const sim::SimConfig& config,
                                      const std::vector<double>& t_grid, int replications,
                                      std::uint64_t seed, int threads = 1);

}  // namespace uncervals::eval
