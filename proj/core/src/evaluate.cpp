#include "uncervals/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uncervals/ks.hpp"
#include "uncervals/oracle.hpp"
#include "uncervals/parallel.hpp"
#include "uncervals/rng.hpp"

namespace uncervals::eval {

NaiveLpb naive_quantile_lpb(const ConditionalCdfModel& model, std::span<const double> x,
                            double alpha, double t_max) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw numeric_error("naive_quantile_lpb: alpha must lie in (0,1)");
    const double t = model.invert_survival(1.0 - alpha, x, t_max);
    if (std::isinf(t)) return {t_max, true};
    return {t, false};
}

std::string MethodSpec::label() const {
    if (kind == Kind::naive) return "naive-" + estimator.kind_name();
    return "uncervals-" + conformal::mode_name(mode) + "-" + estimator.kind_name();
}

namespace {

struct SampleSummary {
    double mean = 0.0;
    double sd = 0.0;
};

SampleSummary summarize(const std::vector<double>& v) {
    SampleSummary s;
    if (v.empty()) return s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() > 1) {
        double acc = 0.0;
        for (double x : v) acc += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(acc / static_cast<double>(v.size() - 1));
    }
    return s;
}

// Fit on split 1 and return the method's LPB function together with the
// pieces the caller may reuse.
struct FittedLpb {
    ModelPtr model;
    double t_max = 0.0;
    double q_hat = 0.0;   // uncervals only
    double alpha = 0.1;
    bool naive = false;
};

FittedLpb build_lpb(const MethodSpec& method, const Dataset& train, double alpha,
                    std::uint64_t seed) {
    FittedLpb out;
    out.alpha = alpha;
    if (method.kind == MethodSpec::Kind::naive) {
        const SplitPlan split = make_split(train.size(), method.fit_fraction, seed);
        const Dataset fit_data = train.subset(split.fit_indices);
        out.model = fit_estimator(method.estimator, fit_data);
        out.t_max = 10.0 * fit_data.max_finite_endpoint();
        out.naive = true;
        return out;
    }
    conformal::UncervalsOptions opts;
    opts.alpha = alpha;
    opts.b = method.b;
    opts.mode = method.mode;
    opts.fit_fraction = method.fit_fraction;
    opts.seed = seed;
    opts.estimator = method.estimator;
    auto run = conformal::calibrate_pipeline(train, opts);
    out.model = run.model;
    out.t_max = run.t_max;
    out.q_hat = run.calibration.q_hat;
    return out;
}

double lpb_at(const FittedLpb& f, std::span<const double> x) {
    if (f.naive) return naive_quantile_lpb(*f.model, x, f.alpha, f.t_max).value;
    return conformal::prediction_set(*f.model, x, f.q_hat, 1.0, f.alpha, f.t_max).lo;
}

}  // namespace

CoverageReport marginal_coverage(const MethodSpec& method, const sim::SimConfig& config,
                                 double alpha, int replications, std::size_t n_test,
                                 std::uint64_t seed, int threads) {
    if (replications < 1) throw numeric_error("marginal_coverage: need replications >= 1");
    CoverageReport report;
    report.alpha = alpha;
    report.replications = replications;
    report.method_label = method.label();
    report.per_replication.assign(static_cast<std::size_t>(replications), 0.0);

    const std::uint64_t root = rng::derive(seed, "eval");
    parallel_for(static_cast<std::size_t>(replications), threads, [&](std::size_t rep) {
        const std::uint64_t rep_key = rng::derive(root, rep);

        sim::SimConfig train_cfg = config;
        train_cfg.seed = rng::derive(rep_key, "train");
        const sim::SimOutput train = sim::simulate(train_cfg);

        const FittedLpb lpb = build_lpb(method, train.dataset, alpha,
                                        rng::derive(rep_key, "method"));

        sim::SimConfig test_cfg = config;
        test_cfg.n = n_test;
        test_cfg.seed = rng::derive(rep_key, "test");
        const sim::SimOutput test = sim::simulate(test_cfg);

        std::size_t covered = 0;
        for (std::size_t i = 0; i < n_test; ++i) {
            if (test.true_times[i] >= lpb_at(lpb, test.dataset[i].x)) ++covered;
        }
        report.per_replication[rep] =
            static_cast<double>(covered) / static_cast<double>(n_test);
    });

    const SampleSummary s = summarize(report.per_replication);
    report.mean = s.mean;
    report.sd = s.sd;
    return report;
}

ConditionalCoverageCurve conditional_coverage_curve(
    const std::function<double(std::span<const double>)>& lpb, const sim::SimConfig& config,
    double alpha, std::size_t n_eval, std::uint64_t seed) {
    if (n_eval < 100) throw numeric_error("conditional_coverage_curve: n_eval too small");

    sim::SimConfig eval_cfg = config;
    eval_cfg.n = n_eval;
    eval_cfg.seed = seed;
    const sim::SimOutput fresh = sim::simulate(eval_cfg);

    std::vector<double> xs(n_eval);
    std::vector<int> ys(n_eval);
    for (std::size_t i = 0; i < n_eval; ++i) {
        xs[i] = fresh.dataset[i].x.at(0);
        ys[i] = fresh.true_times[i] >= lpb(fresh.dataset[i].x) ? 1 : 0;
    }

    ConditionalCoverageCurve out;
    out.curve = local_logistic_curve(xs, ys);
    out.err = err_from_curve(out.curve, xs, 1.0 - alpha);
    return out;
}

ErrComparisonReport err_comparison(const sim::SimConfig& config, double alpha, int replications,
                                   std::size_t n_eval, const EstimatorSpec& estimator,
                                   double fit_fraction, std::uint64_t seed, int threads) {
    if (replications < 1) throw numeric_error("err_comparison: need replications >= 1");
    ErrComparisonReport report;
    report.alpha = alpha;
    report.replications = replications;
    report.err_uncervals.assign(static_cast<std::size_t>(replications), 0.0);
    report.err_naive.assign(static_cast<std::size_t>(replications), 0.0);

    std::vector<ConditionalCoverageCurve> unc_curves(static_cast<std::size_t>(replications));
    std::vector<ConditionalCoverageCurve> naive_curves(static_cast<std::size_t>(replications));

    const std::uint64_t root = rng::derive(seed, "eval");
    parallel_for(static_cast<std::size_t>(replications), threads, [&](std::size_t rep) {
        const std::uint64_t rep_key = rng::derive(root, rep);

        sim::SimConfig train_cfg = config;
        train_cfg.seed = rng::derive(rep_key, "train");
        const sim::SimOutput train = sim::simulate(train_cfg);

        // One split and one fit shared by both constructions.
        conformal::UncervalsOptions opts;
        opts.alpha = alpha;
        opts.b = 1.0;
        opts.mode = conformal::Mode::estar;
        opts.fit_fraction = fit_fraction;
        opts.seed = rng::derive(rep_key, "method");
        opts.estimator = estimator;
        const auto run = conformal::calibrate_pipeline(train.dataset, opts);

        const auto unc_lpb = [&](std::span<const double> x) {
            return conformal::prediction_set(*run.model, x, run.calibration.q_hat, 1.0, alpha,
                                             run.t_max)
                .lo;
        };
        const auto naive_lpb = [&](std::span<const double> x) {
            return naive_quantile_lpb(*run.model, x, alpha, run.t_max).value;
        };

        const std::uint64_t eval_seed = rng::derive(rep_key, "fresh");
        unc_curves[rep] = conditional_coverage_curve(unc_lpb, config, alpha, n_eval, eval_seed);
        naive_curves[rep] =
            conditional_coverage_curve(naive_lpb, config, alpha, n_eval, eval_seed);
        report.err_uncervals[rep] = unc_curves[rep].err;
        report.err_naive[rep] = naive_curves[rep].err;
    });

    const SampleSummary su = summarize(report.err_uncervals);
    const SampleSummary sn = summarize(report.err_naive);
    report.mean_err_uncervals = su.mean;
    report.sd_err_uncervals = su.sd;
    report.mean_err_naive = sn.mean;
    report.sd_err_naive = sn.sd;
    report.last_uncervals = unc_curves.back();
    report.last_naive = naive_curves.back();
    return report;
}

GofReport gof_uniformity(const ConditionalCdfModel& model, const Dataset& data,
                         std::uint64_t seed) {
    if (data.size() < 10) throw numeric_error("gof_uniformity: need at least 10 rows");
    const conformal::BorderScores scores = conformal::border_scores(model, data);

    GofReport report;
    report.n = data.size();
    report.phi_star_sorted.resize(data.size());
    const std::uint64_t key = rng::derive(seed, "gof");
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double u = rng::unit(rng::at(key, i));
        const double v = scores.lambda[i] + (scores.upsilon[i] - scores.lambda[i]) * u;
        report.phi_star_sorted[i] = std::min(1.0, std::max(0.0, v));
    }
    std::sort(report.phi_star_sorted.begin(), report.phi_star_sorted.end());
    report.statistic = ks_statistic_uniform(report.phi_star_sorted);
    report.p_value = kolmogorov_pvalue(report.statistic, report.n);
    return report;
}

VcReport vc_shatter_search(std::uint64_t budget, int n_points, std::uint64_t seed) {
    if (budget < 1) throw numeric_error("vc_shatter_search: budget must be positive");
    if (n_points < 1 || n_points > 5) throw numeric_error("vc_shatter_search: 1..5 points");

    VcReport report;
    report.n_points = n_points;
    report.budget = budget;
    const int full = 1 << n_points;
    rng::Stream s(rng::derive(seed, "vc"));

    std::vector<double> l(static_cast<std::size_t>(n_points)),
        u(static_cast<std::size_t>(n_points)), c(static_cast<std::size_t>(n_points));
    for (std::uint64_t trial = 0; trial < budget; ++trial) {
        for (int j = 0; j < n_points; ++j) {
            l[j] = s.next_unit();
            u[j] = l[j] + s.next_unit_open();
            // c >= 0: negative thresholds can never exclude their point.
            c[j] = s.next_unit() * (u[j] - l[j]) * 1.2;
        }
        // Membership of point j flips only at l_j + c_j and u_j; probe just
        // around every boundary plus the far outside.
        std::vector<double> probes;
        probes.reserve(4 * static_cast<std::size_t>(n_points) + 2);
        for (int j = 0; j < n_points; ++j) {
            for (double t : {l[j] + c[j], u[j]}) {
                probes.push_back(t - 1e-9);
                probes.push_back(t + 1e-9);
            }
        }
        probes.push_back(-1.0);
        probes.push_back(1e9);

        int distinct = 0;
        std::vector<int> seen;
        for (double t : probes) {
            int mask = 0;
            for (int j = 0; j < n_points; ++j) {
                if (l[j] <= t && t < u[j] && (t - l[j]) > c[j]) mask |= 1 << j;
            }
            if (std::find(seen.begin(), seen.end(), mask) == seen.end()) {
                seen.push_back(mask);
                ++distinct;
            }
        }
        report.max_dichotomies = std::max(report.max_dichotomies, distinct);
        if (distinct == full) {
            report.shattered = true;
            break;
        }
    }
    return report;
}

UnbiasednessReport unbiasedness_check(const sim::SimConfig& config,
                                      const std::vector<double>& t_grid, int replications,
                                      std::uint64_t seed, int threads) {
    if (replications < 2) throw numeric_error("unbiasedness_check: need replications >= 2");
    UnbiasednessReport report;
    report.t_grid = t_grid;
    report.replications = replications;

    const OracleModel oracle = oracle_from_config(config);
    std::vector<std::vector<double>> values(
        t_grid.size(), std::vector<double>(static_cast<std::size_t>(replications), 0.0));

    const std::uint64_t root = rng::derive(seed, "eval");
    parallel_for(static_cast<std::size_t>(replications), threads, [&](std::size_t rep) {
        sim::SimConfig cfg = config;
        cfg.seed = rng::derive(rng::derive(root, rep), "train");
        const sim::SimOutput out = sim::simulate(cfg);
        const conformal::BorderScores scores = conformal::border_scores(oracle, out.dataset);
        for (std::size_t k = 0; k < t_grid.size(); ++k)
            values[k][rep] = conformal::interval_distribution(scores, t_grid[k]);
    });

    report.mean.resize(t_grid.size());
    report.se.resize(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const SampleSummary s = summarize(values[k]);
        report.mean[k] = s.mean;
        report.se[k] = s.sd / std::sqrt(static_cast<double>(replications));
    }
    return report;
}

}  // namespace uncervals::eval
