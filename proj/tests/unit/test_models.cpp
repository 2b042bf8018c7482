#include <doctest.h>

#include <cmath>

#include "uncervals/serialize.hpp"

using namespace uncervals;

TEST_CASE("oracle cdf matches the closed form") {
    OracleModel m(2.0, 1.0, Link::constant());
    CHECK(m.cdf(1.0, {}) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(evaluate_cdf(m, kInf, {}) == 1.0);
    CHECK(evaluate_cdf(m, 0.0, {}) == 0.0);
}

TEST_CASE("evaluate_cdf enforces monotonicity in t") {
    OracleModel m(1.5, 2.0, Link::linear({0.7}));
    const std::vector<double> x{0.3};
    double prev = 0.0;
    for (double t = 0.0; t <= 5.0; t += 0.05) {
        const double f = evaluate_cdf(m, t, x);
        CHECK(f >= prev);
        CHECK(f <= 1.0);
        prev = f;
    }
}

TEST_CASE("invert_survival agrees with the closed-form inverse") {
    // S(t,x) = exp(-(st)^p e^r) gives t*(q) = (1/s) ((-log q) e^{-r})^{1/p};
    // the generic bisection must land on it.
    OracleModel m(2.0, 1.0, Link::constant());
    CHECK(m.invert_survival(1.0, {}, 50.0) == 0.0);
    CHECK(m.invert_survival(std::exp(-1.0), {}, 50.0) == doctest::Approx(1.0).epsilon(1e-6));

    OracleModel mx(1.7, 0.6, Link::linear({-0.5}));
    const std::vector<double> x{0.8};
    const double r = -0.5 * 0.8;
    for (double q : {0.95, 0.7, 0.5, 0.2, 0.05, 0.006}) {
        const double closed = std::pow(-std::log(q) * std::exp(-r), 1.0 / 1.7) / 0.6;
        CHECK(mx.invert_survival(q, x, 100.0) == doctest::Approx(closed).epsilon(1e-7));
    }
}

TEST_CASE("invert_survival saturates at the horizon") {
    OracleModel m(2.0, 1.0, Link::constant());
    // S(0.5) = exp(-0.25) ~ 0.78 > 0.5, so the level is not reached by 0.5.
    CHECK(std::isinf(m.invert_survival(0.5, {}, 0.5)));
}

TEST_CASE("inversion and evaluation are consistent on a grid") {
    OracleModel m(2.3, 1.4, Link::constant());
    for (double q = 0.05; q < 1.0; q += 0.05) {
        const double t = m.invert_survival(q, {}, 100.0);
        CHECK(m.survival(t, {}) <= q + 1e-7);
        if (t > 1e-6) CHECK(m.survival(t - 1e-6, {}) >= q - 1e-7);
    }
}

TEST_CASE("models round-trip through JSON") {
    // Weibull PH: exact double equality after the round trip.
    WeibullPhFit wb;
    wb.log_scale = 0.123456789012345;
    wb.log_shape = -0.54321;
    wb.beta = {0.25, -1.75};
    wb.converged = true;
    wb.set_default_t_max(42.5);
    ModelPtr back = model_from_json(model_to_json(wb));
    const std::vector<double> x{0.4, 1.1};
    CHECK(back->cdf(0.77, x) == wb.cdf(0.77, x));
    CHECK(back->default_t_max() == 42.5);

    // Turnbull with an infinite tail interval survives the "inf" token.
    Dataset d;
    d.covariate_dim = 0;
    d.observations = {{0.0, 1.0, {}}, {0.5, 2.0, {}}, {3.0, kInf, {}}};
    TurnbullFit tb = turnbull_fit(d);
    ModelPtr tb2 = model_from_json(model_to_json(tb));
    for (double t : {0.2, 0.9, 1.5, 5.0}) CHECK(tb2->cdf(t, {}) == tb.cdf(t, {}));

    OracleModel orc(2.0, 1.0, Link::abs_linear({-0.3}));
    ModelPtr orc2 = model_from_json(model_to_json(orc));
    CHECK(orc2->cdf(0.8, std::vector<double>{-1.2}) == orc.cdf(0.8, std::vector<double>{-1.2}));

    Dataset dx;
    dx.covariate_dim = 1;
    dx.observations = {{0.0, 1.0, {0.2}}, {0.5, 2.0, {0.9}}, {3.0, kInf, {1.4}}, {0.2, 0.7, {0.4}}};
    KernelTurnbullModel kt(dx, {0.5});
    ModelPtr kt2 = model_from_json(model_to_json(kt));
    const std::vector<double> q{0.55};
    CHECK(kt2->cdf(0.9, q) == kt.cdf(0.9, q));
}

TEST_CASE("calibration results round-trip including saturated quantiles") {
    conformal::CalibrationResult r;
    r.mode = conformal::Mode::estar;
    r.b = 1.0;
    r.alpha = 0.05;
    r.seed = 7;
    r.phi_star = {0.1, 0.9};
    r.v_star = {0.9, 0.1};
    r.q_hat = kInf;
    auto back = calibration_from_json(calibration_to_json(r));
    CHECK(back.mode == conformal::Mode::estar);
    CHECK(std::isinf(back.q_hat));
    CHECK(back.phi_star == r.phi_star);
}
