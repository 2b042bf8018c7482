#include "uncervals/model.hpp"

#include <cmath>

namespace uncervals {

double ConditionalCdfModel::invert_survival(double q, std::span<const double> x,
                                            double t_max) const {
    if (std::isnan(q)) throw numeric_error("invert_survival: q is NaN");
    if (survival(0.0, x) <= q) return 0.0;
    if (survival(t_max, x) > q) return kInf;

    double lo = 0.0, hi = t_max;  // S(lo) > q >= S(hi)
    for (int iter = 0; iter < 200 && hi - lo > 1e-9; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (survival(mid, x) <= q)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double evaluate_cdf(const ConditionalCdfModel& model, double t, std::span<const double> x) {
    if (std::isnan(t)) throw numeric_error("evaluate_cdf: t is NaN");
    if (std::isinf(t)) return 1.0;
    if (t < 0.0) return 0.0;
    const double f = model.cdf(t, x);
    if (!(f >= -1e-12 && f <= 1.0 + 1e-12))
        throw numeric_error("evaluate_cdf: model value outside [0,1]");
    return std::min(1.0, std::max(0.0, f));
}

}  // namespace uncervals
