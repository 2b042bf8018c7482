#include "uncervals/ks.hpp"

#include <algorithm>
#include <cmath>

#include "uncervals/types.hpp"

namespace uncervals::eval {

double ks_statistic_uniform(const std::vector<double>& sample) {
    if (sample.empty()) throw numeric_error("ks_statistic_uniform: empty sample");
    std::vector<double> s(sample);
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double v = std::min(1.0, std::max(0.0, s[i]));
        const double up = (static_cast<double>(i) + 1.0) / n - v;
        const double down = v - static_cast<double>(i) / n;
        d = std::max(d, std::max(up, down));
    }
    return d;
}

double kolmogorov_pvalue(double d, std::size_t n) {
    if (d <= 0.0) return 1.0;
    const double lambda2 = static_cast<double>(n) * d * d;
    // Below sqrt(n)*d ~ 0.1 the tail probability is 1 to machine precision
    // and the alternating series no longer decays within 100 terms.
    if (lambda2 < 0.01) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        sum += sign * std::exp(-2.0 * static_cast<double>(k) * static_cast<double>(k) * lambda2);
        sign = -sign;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

}  // namespace uncervals::eval
