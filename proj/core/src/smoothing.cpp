#include "uncervals/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uncervals::eval {

double silverman_bandwidth(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) throw numeric_error("silverman_bandwidth: need at least 2 points");
    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    double var = 0.0;
    for (double v : sorted) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / (n - 1.0));
    const double iqr = sorted[static_cast<std::size_t>(0.75 * (n - 1))] -
                       sorted[static_cast<std::size_t>(0.25 * (n - 1))];
    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.349);
    if (!(spread > 0.0)) throw numeric_error("silverman_bandwidth: degenerate sample");
    return 0.9 * spread * std::pow(n, -0.2);
}

namespace {

struct SortedSample {
    std::vector<double> x;
    std::vector<int> y;
};

SortedSample sort_by_x(const std::vector<double>& x, const std::vector<int>& y) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    SortedSample s;
    s.x.reserve(x.size());
    s.y.reserve(x.size());
    for (std::size_t i : order) {
        s.x.push_back(x[i]);
        s.y.push_back(y[i]);
    }
    return s;
}

// Weighted logistic fit with logit b0 + b1*(x - center), Newton iterations on
// points within the kernel's effective window.
double local_fit(const SortedSample& s, double center, double h) {
    const auto lo = std::lower_bound(s.x.begin(), s.x.end(), center - 6.0 * h) - s.x.begin();
    const auto hi = std::upper_bound(s.x.begin(), s.x.end(), center + 6.0 * h) - s.x.begin();
    if (lo >= hi) return std::numeric_limits<double>::quiet_NaN();

    double wsum = 0.0, wy = 0.0;
    std::vector<double> w(static_cast<std::size_t>(hi - lo));
    for (auto i = lo; i < hi; ++i) {
        const double z = (s.x[static_cast<std::size_t>(i)] - center) / h;
        const double wi = std::exp(-0.5 * z * z);
        w[static_cast<std::size_t>(i - lo)] = wi;
        wsum += wi;
        wy += wi * s.y[static_cast<std::size_t>(i)];
    }
    if (!(wsum > 0.0)) return std::numeric_limits<double>::quiet_NaN();

    const double pbar = std::min(1.0 - 1e-6, std::max(1e-6, wy / wsum));
    double b0 = std::log(pbar / (1.0 - pbar));
    double b1 = 0.0;
    for (int iter = 0; iter < 30; ++iter) {
        double g0 = 0.0, g1 = 0.0, h00 = 1e-8, h01 = 0.0, h11 = 1e-8;
        for (auto i = lo; i < hi; ++i) {
            const double dx = s.x[static_cast<std::size_t>(i)] - center;
            double eta = b0 + b1 * dx;
            eta = std::min(30.0, std::max(-30.0, eta));
            const double mu = 1.0 / (1.0 + std::exp(-eta));
            const double wi = w[static_cast<std::size_t>(i - lo)];
            const double resid = s.y[static_cast<std::size_t>(i)] - mu;
            const double curv = std::max(1e-10, mu * (1.0 - mu));
            g0 += wi * resid;
            g1 += wi * resid * dx;
            h00 += wi * curv;
            h01 += wi * curv * dx;
            h11 += wi * curv * dx * dx;
        }
        const double det = h00 * h11 - h01 * h01;
        if (!(std::abs(det) > 1e-300)) break;
        const double step0 = (h11 * g0 - h01 * g1) / det;
        const double step1 = (h00 * g1 - h01 * g0) / det;
        b0 += step0;
        b1 += step1;
        b0 = std::min(15.0, std::max(-15.0, b0));
        b1 = std::min(1e4, std::max(-1e4, b1));
        if (std::abs(step0) + std::abs(step1) < 1e-10) break;
    }
    return 1.0 / (1.0 + std::exp(-b0));
}

}  // namespace

SmoothCurve local_logistic_curve(const std::vector<double>& x, const std::vector<int>& y,
                                 std::size_t grid_size, double bandwidth) {
    if (x.size() != y.size() || x.empty())
        throw numeric_error("local_logistic_curve: bad inputs");
    if (grid_size < 2) throw numeric_error("local_logistic_curve: grid too small");
    const double h = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(x);
    if (!(h > 0.0)) throw numeric_error("local_logistic_curve: degenerate bandwidth");

    const SortedSample s = sort_by_x(x, y);
    SmoothCurve curve;
    curve.bandwidth = h;
    const double x_min = s.x.front(), x_max = s.x.back();
    curve.grid.resize(grid_size);
    curve.pi_hat.resize(grid_size);
    double last_valid = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    for (std::size_t g = 0; g < grid_size; ++g) {
        const double cx =
            x_min + (x_max - x_min) * static_cast<double>(g) / static_cast<double>(grid_size - 1);
        double p = local_fit(s, cx, h);
        if (std::isnan(p)) p = last_valid;
        p = std::min(1.0, std::max(0.0, p));
        curve.grid[g] = cx;
        curve.pi_hat[g] = p;
        last_valid = p;
    }
    return curve;
}

double interpolate(const SmoothCurve& curve, double x) {
    if (curve.grid.empty()) throw numeric_error("interpolate: empty curve");
    if (x <= curve.grid.front()) return curve.pi_hat.front();
    if (x >= curve.grid.back()) return curve.pi_hat.back();
    const auto it = std::upper_bound(curve.grid.begin(), curve.grid.end(), x);
    const auto k = static_cast<std::size_t>(it - curve.grid.begin());
    const double x0 = curve.grid[k - 1], x1 = curve.grid[k];
    const double w = x1 > x0 ? (x - x0) / (x1 - x0) : 0.0;
    return (1.0 - w) * curve.pi_hat[k - 1] + w * curve.pi_hat[k];
}

SmoothCurve binned_curve(const std::vector<double>& x, const std::vector<int>& y,
                         std::size_t bins) {
    if (x.size() != y.size() || x.empty()) throw numeric_error("binned_curve: bad inputs");
    if (bins < 1) throw numeric_error("binned_curve: need at least one bin");
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    const double lo = *mn, width = std::max(1e-300, (*mx - lo) / static_cast<double>(bins));
    std::vector<double> count(bins, 0.0), hits(bins, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto b = static_cast<std::size_t>((x[i] - lo) / width);
        if (b >= bins) b = bins - 1;
        count[b] += 1.0;
        hits[b] += y[i];
    }
    SmoothCurve curve;
    curve.grid.resize(bins);
    curve.pi_hat.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        curve.grid[b] = lo + width * (static_cast<double>(b) + 0.5);
        curve.pi_hat[b] = count[b] > 0.0 ? hits[b] / count[b] : 0.0;
    }
    return curve;
}

double err_from_curve(const SmoothCurve& curve, const std::vector<double>& x, double level) {
    if (x.empty()) throw numeric_error("err_from_curve: no evaluation points");
    double acc = 0.0;
    for (double xi : x) {
        const double d = interpolate(curve, xi) - level;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(x.size()));
}

double err_from_indicators(const std::vector<double>& x, const std::vector<int>& y,
                           double level) {
    return err_from_curve(local_logistic_curve(x, y), x, level);
}

}  // namespace uncervals::eval
