#pragma once

#include <cstdint>
#include <vector>

#include "uncervals/estimators.hpp"
#include "uncervals/model.hpp"
#include "uncervals/split.hpp"
#include "uncervals/types.hpp"

namespace uncervals::conformal {

// e0 calibrates on left-border CDF evaluations (finite-sample valid,
// conservative); estar randomizes uniformly between the border evaluations
// (asymptotically exact).
enum class Mode { e0, estar };

Mode mode_from_name(const std::string& name);
std::string mode_name(Mode m);

// Lambda_i = F1(L_i, X_i), Upsilon_i = F1(U_i, X_i) over split 2;
// Upsilon_i = 1 for right-censored rows.
struct BorderScores {
    std::vector<double> lambda;
    std::vector<double> upsilon;
    std::size_t size() const { return lambda.size(); }
};

// Conformity score |phi - b|; b = 1 yields lower predictive bounds.
inline double psi(double phi, double b) { return std::abs(phi - b); }

BorderScores border_scores(const ConditionalCdfModel& model, const Dataset& split2);

// For each i, draw j uniformly with replacement; e0 takes Lambda_j, estar
// Lambda_j + (Upsilon_j - Lambda_j) * Uniform(0,1). Draws are addressed by i
// on a counter-based stream, so any evaluation order reproduces the same
// vector.
std::vector<double> bootstrap_phi(const BorderScores& scores, Mode mode, std::uint64_t seed);

// k-th smallest with k = ceil((1-alpha)(n+1)); +inf when k > n (saturated).
double conformal_quantile(const std::vector<double>& v_star, double alpha);

struct CalibrationResult {
    Mode mode = Mode::estar;
    double b = 1.0;
    double alpha = 0.1;
    std::uint64_t seed = 0;
    std::vector<double> phi_star;
    std::vector<double> v_star;
    double q_hat = 0.0;
};

CalibrationResult calibrate(const ConditionalCdfModel& model, const Dataset& split2,
                            double alpha, double b, Mode mode, std::uint64_t seed);

// {t >= 0 : psi(F1(t, x)) <= q_hat}. For b = 1 this is [lpb, +inf); in
// general a single interval [lo, hi] found by two survival inversions.
struct PredictionSet {
    std::vector<double> x;
    double alpha = 0.1;
    double b = 1.0;
    double lo = 0.0;
    double hi = kInf;
    bool lower_only() const { return b == 1.0; }
    double lpb() const { return lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
};

PredictionSet prediction_set(const ConditionalCdfModel& model, std::span<const double> x,
                             double q_hat, double b, double alpha, double t_max);

struct UncervalsOptions {
    double alpha = 0.1;
    double b = 1.0;
    Mode mode = Mode::estar;
    double fit_fraction = 0.5;
    std::uint64_t seed = 0;
    EstimatorSpec estimator;
};

// Split -> fit -> border scores -> bootstrap -> quantile, fully deterministic
// given the seed. Predictions are appended per query covariate.
struct UncervalsRun {
    SplitPlan split;
    ModelPtr model;
    CalibrationResult calibration;
    double t_max = 0.0;  // 10x the largest finite endpoint in split 1
    std::vector<PredictionSet> predictions;
};

UncervalsRun calibrate_pipeline(const Dataset& data, const UncervalsOptions& options);

UncervalsRun uncervals(const Dataset& data, const UncervalsOptions& options,
                       const std::vector<std::vector<double>>& x_new);

// Interval distribution I_n(t) = (1/n) sum g_t(Lambda_i, Upsilon_i) with
// g_t(l,u) = 1{u <= t} + 1{l <= t < u} (t-l)/(u-l) and g_t(w,w) = 1{w <= t}
// for collapsed rows.
double interval_distribution(const BorderScores& scores, double t);

}  // namespace uncervals::conformal
