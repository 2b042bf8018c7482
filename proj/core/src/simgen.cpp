#include "uncervals/simgen.hpp"

#include <algorithm>
#include <cmath>

#include "uncervals/rng.hpp"

namespace uncervals::sim {

void SimConfig::validate() const {
    if (!(shape > 0.0)) throw numeric_error("sim: shape must be positive");
    if (!(scale > 0.0)) throw numeric_error("sim: scale must be positive");
    if (inspections < 1) throw numeric_error("sim: need at least one inspection");
    if (!(inspect_length > 0.0)) throw numeric_error("sim: inspect_length must be positive");
    if (n == 0) throw numeric_error("sim: n must be positive");
    if (!(covariates.max >= covariates.min)) throw numeric_error("sim: covariate bounds reversed");
    if (!(covariates.rho >= 0.0 && covariates.rho < 1.0))
        throw numeric_error("sim: correlation must lie in [0,1)");
}

double aft_time(double shape, double scale, double r, double gumbel) {
    return std::exp((gumbel - r) / shape) / scale;
}

double aft_cdf(double shape, double scale, double r, double t) {
    if (t <= 0.0) return 0.0;
    if (std::isinf(t)) return 1.0;
    return -std::expm1(-std::pow(scale * t, shape) * std::exp(r));
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / 1.4142135623730951); }

std::vector<double> draw_covariates(const CovariateLaw& law, rng::Stream& s) {
    std::vector<double> x(law.dim);
    if (law.rho == 0.0) {
        for (auto& v : x) v = s.next_uniform(law.min, law.max);
        return x;
    }
    // Gaussian copula with equicorrelation rho, uniform marginals.
    const double shared = s.next_normal();
    const double w_shared = std::sqrt(law.rho);
    const double w_own = std::sqrt(1.0 - law.rho);
    for (auto& v : x) {
        const double z = w_shared * shared + w_own * s.next_normal();
        v = law.min + (law.max - law.min) * normal_cdf(z);
    }
    return x;
}

}  // namespace

std::vector<double> draw_true_times(const SimConfig& config,
                                    const std::vector<std::vector<double>>& x_matrix) {
    config.validate();
    const std::uint64_t key = rng::derive(config.seed, "sim-times");
    std::vector<double> t(x_matrix.size());
    for (std::size_t i = 0; i < x_matrix.size(); ++i) {
        rng::Stream s(rng::derive(key, i));
        t[i] = aft_time(config.shape, config.scale, config.link(x_matrix[i]), s.next_gumbel_min());
    }
    return t;
}

std::pair<double, double> censor_one(double t, const std::vector<double>& epochs) {
    double prev = 0.0;
    for (double a : epochs) {
        if (t <= a) return {prev, a};
        prev = a;
    }
    return {prev, kInf};
}

Dataset inspect_censor(const std::vector<double>& times,
                       const std::vector<std::vector<double>>& x_matrix,
                       const SimConfig& config) {
    config.validate();
    if (times.size() != x_matrix.size()) throw numeric_error("inspect_censor: size mismatch");
    const std::uint64_t key = rng::derive(config.seed, "sim-epochs");

    Dataset data;
    data.covariate_dim = config.covariates.dim;
    data.observations.reserve(times.size());
    std::vector<double> epochs(static_cast<std::size_t>(config.inspections));
    for (std::size_t i = 0; i < times.size(); ++i) {
        rng::Stream s(rng::derive(key, i));
        double a = 0.0;
        for (auto& e : epochs) {
            a += s.next_uniform(0.0, config.inspect_length);
            e = a;
        }
        auto [l, u] = censor_one(times[i], epochs);
        data.observations.push_back({l, u, x_matrix[i]});
    }
    return data;
}

SimOutput simulate(const SimConfig& config) {
    config.validate();
    const std::uint64_t xkey = rng::derive(config.seed, "sim-covariates");
    std::vector<std::vector<double>> x(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        rng::Stream s(rng::derive(xkey, i));
        x[i] = draw_covariates(config.covariates, s);
    }

    SimOutput out;
    out.true_times = draw_true_times(config, x);
    out.dataset = inspect_censor(out.true_times, x, config);
    out.censor_class.reserve(config.n);
    for (const auto& o : out.dataset.observations) out.censor_class.push_back(classify(o));
    return out;
}

SimConfig preset(const std::string& name) {
    SimConfig c;
    if (name == "condcov") {
        c.shape = 2.0;
        c.scale = 1.0;
        c.inspections = 10;
        c.inspect_length = 1.0;
        c.n = 500;
        c.covariates = {1, -2.0, 2.0, 0.0};
        c.link = Link::abs_linear({-0.3});
        return c;
    }
    if (name == "rc30") {
        c.shape = 2.0;
        c.scale = 1.0;
        c.inspections = 5;
        c.inspect_length = 0.287;
        c.n = 2000;
        c.covariates = {1, 0.0, 2.0, 0.0};
        c.link = Link::linear({1.0});
        c.no_left_censoring = true;
        return c;
    }
    throw io_error("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() { return {"condcov", "rc30"}; }

}  // namespace uncervals::sim
