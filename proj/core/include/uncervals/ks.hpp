#pragma once

#include <cstddef>
#include <vector>

namespace uncervals::eval {

// sup_t |ECDF(t) - t| against the Uniform(0,1) CDF, evaluated at the ECDF
// jump points where the supremum is attained.
double ks_statistic_uniform(const std::vector<double>& sample);

// P(sqrt(n) D_n > sqrt(n) d) from the asymptotic Kolmogorov law,
// 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 n d^2), truncated at 100 terms.
double kolmogorov_pvalue(double d, std::size_t n);

}  // namespace uncervals::eval
