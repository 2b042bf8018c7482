#pragma once

#include <string>
#include <vector>

#include "uncervals/types.hpp"

namespace uncervals {

// Shortest round-trip decimal form; +inf prints as the literal token "inf".
std::string format_double(double v);
double parse_double(const std::string& token);

// Dataset CSV: header `l,u,x1,...,xp`; `u` may be `inf`.
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& data, const std::string& path);

// Covariate CSV: header `x1,...,xp`.
std::vector<std::vector<double>> load_covariates(const std::string& path);

// Sidecar written next to simulated datasets: header `t,censoring`.
void save_true_times(const std::vector<double>& times, const std::vector<Censoring>& classes,
                     const std::string& path);

}  // namespace uncervals
