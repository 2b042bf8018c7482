#include "uncervals/kernel_turnbull.hpp"

#include <algorithm>
#include <cmath>

namespace uncervals {

std::vector<double> rule_of_thumb_bandwidths(const Dataset& data) {
    const std::size_t p = data.covariate_dim;
    const double n = static_cast<double>(data.size());
    std::vector<double> h(p, 1.0);
    std::vector<double> col(data.size());
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < data.size(); ++i) col[i] = data[i].x[j];
        std::sort(col.begin(), col.end());
        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : col) var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / std::max(1.0, n - 1.0));
        const double iqr = col[static_cast<std::size_t>(0.75 * (n - 1))] -
                           col[static_cast<std::size_t>(0.25 * (n - 1))];
        double spread = sd;
        if (iqr > 0.0) spread = std::min(sd, iqr / 1.349);
        if (spread <= 0.0) spread = std::max(sd, 1e-3);
        h[j] = std::max(1e-6, 0.9 * spread * std::pow(n, -0.2));
    }
    return h;
}

KernelTurnbullModel::KernelTurnbullModel(Dataset data, std::vector<double> bandwidths, double tol,
                                         int max_iter)
    : data_(std::move(data)), bandwidths_(std::move(bandwidths)), tol_(tol), max_iter_(max_iter) {
    if (data_.empty()) throw numeric_error("kernel_turnbull: empty dataset");
    if (bandwidths_.empty()) bandwidths_ = rule_of_thumb_bandwidths(data_);
    if (bandwidths_.size() != data_.covariate_dim)
        throw numeric_error("kernel_turnbull: bandwidth dimension mismatch");
    structure_ = detail::turnbull_structure(data_);
    finite_rights_.reserve(structure_.support.size());
    for (const auto& s : structure_.support) finite_rights_.push_back(s.right);
    set_default_t_max(10.0 * data_.max_finite_endpoint());
}

std::shared_ptr<const KernelTurnbullModel::Step> KernelTurnbullModel::step_for(
    std::span<const double> x) const {
    if (x.size() != data_.covariate_dim)
        throw numeric_error("kernel_turnbull: covariate size mismatch");
    std::vector<double> key(x.begin(), x.end());

    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }

    std::vector<double> w(data_.size());
    double w_max = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        double q = 0.0;
        for (std::size_t j = 0; j < key.size(); ++j) {
            const double z = (key[j] - data_[i].x[j]) / bandwidths_[j];
            q += z * z;
        }
        w[i] = std::exp(-0.5 * q);
        w_max = std::max(w_max, w[i]);
    }
    if (!(w_max > 0.0))
        throw numeric_error("kernel_turnbull: no effective neighbors at query point");

    // Rows with negligible relative weight would only underflow the EM; drop
    // them together with the intersections no kept row contains.
    const double cutoff = 1e-10 * w_max;
    std::vector<int> keep_support(structure_.support.size(), 0);
    std::vector<std::pair<int, int>> kept_ranges;
    std::vector<double> kept_weights;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (w[i] < cutoff) continue;
        kept_ranges.push_back(structure_.ranges[i]);
        kept_weights.push_back(w[i]);
        for (int j = structure_.ranges[i].first; j <= structure_.ranges[i].second; ++j)
            keep_support[static_cast<std::size_t>(j)] = 1;
    }
    std::vector<int> compressed(structure_.support.size(), -1);
    int n_kept = 0;
    for (std::size_t j = 0; j < keep_support.size(); ++j)
        if (keep_support[j]) compressed[j] = n_kept++;
    for (auto& [lo, hi] : kept_ranges) {
        lo = compressed[static_cast<std::size_t>(lo)];
        hi = compressed[static_cast<std::size_t>(hi)];
    }

    auto em = detail::turnbull_em(kept_ranges, static_cast<std::size_t>(n_kept), kept_weights,
                                  tol_, max_iter_);
    auto step = std::make_shared<Step>();
    double cum = 0.0;
    for (std::size_t j = 0; j < structure_.support.size(); ++j) {
        if (std::isinf(finite_rights_[j])) break;
        if (compressed[j] >= 0) cum += em.masses[static_cast<std::size_t>(compressed[j])];
        step->breaks.push_back(finite_rights_[j]);
        step->cum.push_back(cum);
    }

    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cache_.size() > 4096) cache_.clear();
    return cache_.emplace(std::move(key), std::move(step)).first->second;
}

double KernelTurnbullModel::cdf(double t, std::span<const double> x) const {
    if (t < 0.0) return 0.0;
    if (std::isinf(t)) return 1.0;
    const auto s = step_for(x);
    const auto it = std::upper_bound(s->breaks.begin(), s->breaks.end(), t);
    if (it == s->breaks.begin()) return 0.0;
    return s->cum[static_cast<std::size_t>(it - s->breaks.begin()) - 1];
}

double KernelTurnbullModel::invert_survival(double q, std::span<const double> x, double) const {
    if (q >= 1.0) return 0.0;
    const auto s = step_for(x);
    for (std::size_t k = 0; k < s->breaks.size(); ++k)
        if (1.0 - s->cum[k] <= q) return s->breaks[k];
    return kInf;
}

}  // namespace uncervals
