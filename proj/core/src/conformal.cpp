#include "uncervals/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "uncervals/rng.hpp"

namespace uncervals::conformal {

Mode mode_from_name(const std::string& name) {
    if (name == "e0") return Mode::e0;
    if (name == "estar") return Mode::estar;
    throw io_error("unknown mode '" + name + "' (expected e0 or estar)");
}

std::string mode_name(Mode m) { return m == Mode::e0 ? "e0" : "estar"; }

BorderScores border_scores(const ConditionalCdfModel& model, const Dataset& split2) {
    if (split2.empty()) throw numeric_error("border_scores: empty calibration set");
    BorderScores s;
    s.lambda.reserve(split2.size());
    s.upsilon.reserve(split2.size());
    for (const auto& o : split2.observations) {
        const double lam = evaluate_cdf(model, o.l, o.x);
        const double ups = std::isinf(o.u) ? 1.0 : evaluate_cdf(model, o.u, o.x);
        if (ups < lam - 1e-12) throw numeric_error("border_scores: model is not monotone");
        s.lambda.push_back(lam);
        s.upsilon.push_back(std::max(lam, ups));
    }
    return s;
}

std::vector<double> bootstrap_phi(const BorderScores& scores, Mode mode, std::uint64_t seed) {
    const std::size_t n = scores.size();
    if (n == 0) throw numeric_error("bootstrap_phi: empty scores");
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(rng::bounded(rng::at(seed, 2 * i), n));
        if (mode == Mode::e0) {
            phi[i] = scores.lambda[j];
        } else {
            const double u = rng::unit(rng::at(seed, 2 * i + 1));
            const double v = scores.lambda[j] + (scores.upsilon[j] - scores.lambda[j]) * u;
            phi[i] = std::min(1.0, std::max(0.0, v));
        }
    }
    return phi;
}

double conformal_quantile(const std::vector<double>& v_star, double alpha) {
    const std::size_t n = v_star.size();
    if (n == 0) throw numeric_error("conformal_quantile: empty scores");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw numeric_error("conformal_quantile: alpha must lie in (0,1)");
    // Small slack so that exactly-integer levels are not pushed up by the
    // floating-point representation of (1-alpha).
    const double level = (1.0 - alpha) * static_cast<double>(n + 1);
    const auto k = static_cast<std::size_t>(std::ceil(level - 1e-9));
    if (k > n) return kInf;
    std::vector<double> sorted(v_star);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     sorted.end());
    return sorted[k - 1];
}

CalibrationResult calibrate(const ConditionalCdfModel& model, const Dataset& split2,
                            double alpha, double b, Mode mode, std::uint64_t seed) {
    if (!(b >= 0.0 && b <= 1.0)) throw numeric_error("calibrate: b must lie in [0,1]");
    CalibrationResult r;
    r.mode = mode;
    r.b = b;
    r.alpha = alpha;
    r.seed = seed;
    const BorderScores scores = border_scores(model, split2);
    r.phi_star = bootstrap_phi(scores, mode, seed);
    r.v_star.reserve(r.phi_star.size());
    for (double phi : r.phi_star) r.v_star.push_back(psi(phi, b));
    r.q_hat = conformal_quantile(r.v_star, alpha);
    return r;
}

PredictionSet prediction_set(const ConditionalCdfModel& model, std::span<const double> x,
                             double q_hat, double b, double alpha, double t_max) {
    if (!(q_hat >= 0.0)) throw numeric_error("prediction_set: negative quantile");
    PredictionSet set;
    set.x.assign(x.begin(), x.end());
    set.alpha = alpha;
    set.b = b;
    if (std::isinf(q_hat) || q_hat >= std::max(b, 1.0 - b)) {
        return set;  // psi never exceeds max(b, 1-b): full support [0, inf)
    }
    set.lo = b - q_hat <= 0.0 ? 0.0 : model.invert_survival(1.0 - (b - q_hat), x, t_max);
    set.hi = b + q_hat >= 1.0 ? kInf : model.invert_survival(1.0 - (b + q_hat), x, t_max);
    return set;
}

UncervalsRun calibrate_pipeline(const Dataset& data, const UncervalsOptions& options) {
    data.validate();
    if (data.empty()) throw numeric_error("uncervals: empty dataset");

    UncervalsRun run;
    run.split = make_split(data.size(), options.fit_fraction, options.seed);
    const Dataset fit_data = data.subset(run.split.fit_indices);
    const Dataset cal_data = data.subset(run.split.calibration_indices);

    run.model = fit_estimator(options.estimator, fit_data);
    run.t_max = 10.0 * fit_data.max_finite_endpoint();
    if (run.t_max <= 0.0) run.t_max = 1.0;
    run.calibration = calibrate(*run.model, cal_data, options.alpha, options.b, options.mode,
                                rng::derive(options.seed, "boot"));
    return run;
}

UncervalsRun uncervals(const Dataset& data, const UncervalsOptions& options,
                       const std::vector<std::vector<double>>& x_new) {
    UncervalsRun run = calibrate_pipeline(data, options);
    run.predictions.reserve(x_new.size());
    for (const auto& x : x_new) {
        run.predictions.push_back(prediction_set(*run.model, x, run.calibration.q_hat,
                                                 options.b, options.alpha, run.t_max));
    }
    return run;
}

double interval_distribution(const BorderScores& scores, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw numeric_error("interval_distribution: t outside [0,1]");
    const std::size_t n = scores.size();
    if (n == 0) throw numeric_error("interval_distribution: empty scores");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double l = scores.lambda[i];
        const double u = scores.upsilon[i];
        if (!(l >= 0.0 && l <= u && u <= 1.0))
            throw numeric_error("interval_distribution: scores outside the unit triangle");
        if (u - l <= 1e-12) {
            acc += (l <= t) ? 1.0 : 0.0;  // collapsed pair contributes a step
        } else if (u <= t) {
            acc += 1.0;
        } else if (l <= t) {
            acc += (t - l) / (u - l);
        }
    }
    return acc / static_cast<double>(n);
}

}  // namespace uncervals::conformal
