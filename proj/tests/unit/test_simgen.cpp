#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "uncervals/rng.hpp"
#include "uncervals/simgen.hpp"

using namespace uncervals;
using namespace uncervals::sim;

TEST_CASE("aft_time inverts the model at the Gumbel origin") {
    CHECK(aft_time(1.0, 1.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(aft_time(2.0, 3.0, 0.0, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("latent times follow the closed-form law") {
    // P(T <= 1) = F(1) = 1 - exp(-(s*1)^p * e^r); Monte Carlo against it.
    SimConfig cfg;
    cfg.shape = 2.0;
    cfg.scale = 1.0;
    cfg.covariates.dim = 0;
    cfg.link = Link::constant();
    cfg.seed = 2024;
    const std::size_t m = 1000000;
    std::vector<std::vector<double>> x(m);
    cfg.n = m;

    auto t = draw_true_times(cfg, x);
    double frac = 0.0;
    for (double v : t) {
        CHECK(v > 0.0);
        if (v <= 1.0) frac += 1.0;
    }
    frac /= static_cast<double>(m);
    CHECK(frac == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.004));
}

TEST_CASE("link shifts the law as exp(r)") {
    // r(x) = x at x = log 2 doubles the cumulative hazard.
    SimConfig cfg;
    cfg.shape = 2.0;
    cfg.scale = 1.0;
    cfg.covariates.dim = 1;
    cfg.link = Link::linear({1.0});
    cfg.seed = 99;
    const std::size_t m = 1000000;
    std::vector<std::vector<double>> x(m, {std::log(2.0)});
    cfg.n = m;

    auto t = draw_true_times(cfg, x);
    double frac = 0.0;
    for (double v : t)
        if (v <= 1.0) frac += 1.0;
    frac /= static_cast<double>(m);
    CHECK(frac == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(0.003));
}

TEST_CASE("censor_one follows the containment and censoring rules") {
    const std::vector<double> epochs{0.1, 0.2, 0.5, 1.0};
    auto left = censor_one(0.05, epochs);
    CHECK(left.first == 0.0);
    CHECK(left.second == 0.1);
    auto right = censor_one(99.0, epochs);
    CHECK(right.first == 1.0);
    CHECK(std::isinf(right.second));
    auto mid = censor_one(0.35, {0.2, 0.5, 1.0});
    CHECK(mid.first == 0.2);
    CHECK(mid.second == 0.5);
    // T on an epoch belongs to the interval ending there.
    auto edge = censor_one(0.5, {0.2, 0.5, 1.0});
    CHECK(edge.first == 0.2);
    CHECK(edge.second == 0.5);
}

TEST_CASE("simulate keeps every latent time inside its interval") {
    SimConfig cfg = preset("condcov");
    cfg.seed = 31;
    SimOutput out = simulate(cfg);
    REQUIRE(out.dataset.size() == 500);
    REQUIRE(out.true_times.size() == 500);
    for (std::size_t i = 0; i < out.dataset.size(); ++i) {
        CHECK(out.dataset[i].l < out.true_times[i]);
        CHECK(out.true_times[i] <= out.dataset[i].u);
    }

    SimOutput again = simulate(cfg);
    CHECK(again.true_times == out.true_times);
    for (std::size_t i = 0; i < out.dataset.size(); ++i) {
        CHECK(again.dataset[i].l == out.dataset[i].l);
        CHECK(again.dataset[i].u == out.dataset[i].u);
        CHECK(again.dataset[i].x == out.dataset[i].x);
    }
}

TEST_CASE("rc30 preset right-censors about 30 percent") {
    SimConfig cfg = preset("rc30");
    cfg.seed = 5;
    SimOutput out = simulate(cfg);
    double rc = 0.0;
    for (auto c : out.censor_class)
        if (c == Censoring::right) rc += 1.0;
    rc /= static_cast<double>(out.dataset.size());
    CHECK(rc > 0.27);
    CHECK(rc < 0.33);
}

TEST_CASE("empirical law of T matches the oracle CDF (KS)") {
    SimConfig cfg;
    cfg.shape = 2.0;
    cfg.scale = 1.0;
    cfg.covariates.dim = 1;
    cfg.link = Link::abs_linear({-0.3});
    cfg.seed = 404;
    const std::size_t m = 100000;
    const double x_fixed = 0.7;
    std::vector<std::vector<double>> x(m, {x_fixed});
    cfg.n = m;

    auto t = draw_true_times(cfg, x);
    std::sort(t.begin(), t.end());
    const double r = cfg.link(std::vector<double>{x_fixed});
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double f = aft_cdf(cfg.shape, cfg.scale, r, t[i]);
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / static_cast<double>(m) - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / static_cast<double>(m)));
    }
    CHECK(d < 0.01);
}

TEST_CASE("correlated covariates keep uniform marginals") {
    SimConfig cfg;
    cfg.covariates = {2, -1.0, 1.0, 0.6};
    cfg.n = 20000;
    cfg.seed = 8;
    cfg.link = Link::linear({0.0, 0.0});
    SimOutput out = simulate(cfg);
    double m1 = 0.0, m2 = 0.0, cross = 0.0;
    for (const auto& o : out.dataset.observations) {
        CHECK(o.x[0] >= -1.0);
        CHECK(o.x[0] <= 1.0);
        m1 += o.x[0];
        m2 += o.x[1];
        cross += o.x[0] * o.x[1];
    }
    const double n = static_cast<double>(out.dataset.size());
    m1 /= n;
    m2 /= n;
    const double cov = cross / n - m1 * m2;
    CHECK(std::abs(m1) < 0.02);
    CHECK(cov > 0.1);  // positively correlated through the copula
}

TEST_CASE("config validation rejects bad knobs") {
    SimConfig cfg = preset("condcov");
    cfg.shape = 0.0;
    CHECK_THROWS_AS(cfg.validate(), numeric_error);
    cfg = preset("condcov");
    cfg.inspections = 0;
    CHECK_THROWS_AS(cfg.validate(), numeric_error);
    CHECK_THROWS_AS(preset("nope"), io_error);
}
