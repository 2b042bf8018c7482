#pragma once

#include <vector>

#include "uncervals/types.hpp"

namespace uncervals::eval {

// Silverman's rule of thumb on one covariate column.
double silverman_bandwidth(const std::vector<double>& x);

struct SmoothCurve {
    std::vector<double> grid;
    std::vector<double> pi_hat;  // clipped to [0,1]
    double bandwidth = 0.0;
};

// Local-linear logistic regression of binary outcomes on a scalar covariate:
// at each grid point the logit is fit by Newton steps under Gaussian
// Nadaraya-Watson weights. grid_size points span the sample range.
SmoothCurve local_logistic_curve(const std::vector<double>& x, const std::vector<int>& y,
                                 std::size_t grid_size = 201, double bandwidth = 0.0);

double interpolate(const SmoothCurve& curve, double x);

// 20-equal-width-bin proportion estimator, cross-check for the smoother.
SmoothCurve binned_curve(const std::vector<double>& x, const std::vector<int>& y,
                         std::size_t bins = 20);

// err = sqrt( mean_i (pi_hat(x_i) - level)^2 ), pi_hat interpolated from the
// curve at every sample point. Invariant to permutations of (x, y).
double err_from_curve(const SmoothCurve& curve, const std::vector<double>& x, double level);

double err_from_indicators(const std::vector<double>& x, const std::vector<int>& y,
                           double level);

}  // namespace uncervals::eval
