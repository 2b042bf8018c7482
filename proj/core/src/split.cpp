#include "uncervals/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uncervals/rng.hpp"
#include "uncervals/types.hpp"

namespace uncervals {

SplitPlan make_split(std::size_t n_total, double fit_fraction, std::uint64_t seed) {
    if (n_total < 4) throw numeric_error("make_split: need at least 4 observations");
    if (!(fit_fraction > 0.0 && fit_fraction < 1.0))
        throw numeric_error("make_split: fit_fraction must lie in (0,1)");

    const auto n_fit =
        static_cast<std::size_t>(std::llround(fit_fraction * static_cast<double>(n_total)));
    if (n_fit == 0 || n_fit == n_total)
        throw numeric_error("make_split: fraction leaves an empty part");

    std::vector<std::size_t> idx(n_total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});

    // Fisher-Yates on our own stream; std::shuffle is not stable across
    // standard library implementations.
    rng::Stream stream(rng::derive(seed, "split"));
    for (std::size_t i = n_total - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(stream.next_index(i + 1));
        std::swap(idx[i], idx[j]);
    }

    SplitPlan plan;
    plan.seed = seed;
    plan.fit_indices.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_fit));
    plan.calibration_indices.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_fit), idx.end());
    std::sort(plan.fit_indices.begin(), plan.fit_indices.end());
    std::sort(plan.calibration_indices.begin(), plan.calibration_indices.end());
    return plan;
}

}  // namespace uncervals
