#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace uncervals {

// Disjoint fit/calibration index sets over {0, ..., n_total-1}. A pure
// function of (n_total, fit_fraction, seed): identical inputs give identical
// plans, so any pipeline stage can re-derive the split.
struct SplitPlan {
    std::vector<std::size_t> fit_indices;
    std::vector<std::size_t> calibration_indices;
    std::uint64_t seed = 0;
};

SplitPlan make_split(std::size_t n_total, double fit_fraction, std::uint64_t seed);

}  // namespace uncervals
