#include "uncervals/weibull_ph.hpp"

#include <algorithm>
#include <cmath>

#include "uncervals/bfgs.hpp"

namespace uncervals {

namespace {

// Cumulative hazard H(t,x) = exp(shape*(log_scale + log t) + x'beta) and its
// partials with respect to (log_scale, log_shape, beta). t = 0 contributes
// H = 0 with zero gradient.
struct Hazard {
    double h = 0.0;
    double d_a = 0.0;  // d/d log_scale = shape * H
    double d_c = 0.0;  // d/d log_shape = shape * (log_scale + log t) * H
    double x_factor = 0.0;  // d/d beta_k = x_k * H
};

Hazard hazard_at(double t, double log_scale, double shape, double eta) {
    Hazard h;
    if (t <= 0.0) return h;
    const double m = log_scale + std::log(t);
    h.h = std::exp(shape * m + eta);
    h.d_a = shape * h.h;
    h.d_c = shape * m * h.h;
    h.x_factor = h.h;
    return h;
}

struct RowTerm {
    double value = 0.0;  // log-likelihood contribution
    double d_a = 0.0;
    double d_c = 0.0;
    double d_h_l = 0.0;  // multiplier on the lower-hazard gradient
    double d_h_u = 0.0;  // multiplier on the upper-hazard gradient
};

}  // namespace

double weibull_ph_nll(const Dataset& data, const std::vector<double>& theta,
                      std::vector<double>* gradient) {
    const std::size_t p = data.covariate_dim;
    if (theta.size() != p + 2) throw numeric_error("weibull_ph: parameter size mismatch");
    const double log_scale = theta[0];
    const double shape = std::exp(theta[1]);
    const double n = static_cast<double>(data.size());

    double loglik = 0.0;
    if (gradient) gradient->assign(p + 2, 0.0);

    for (const auto& o : data.observations) {
        double eta = 0.0;
        for (std::size_t j = 0; j < p; ++j) eta += theta[j + 2] * o.x[j];

        double v, g_a = 0.0, g_c = 0.0, g_eta = 0.0;
        if (is_exact(o)) {
            // Degenerate interval: density term log f(t|x).
            const double t = o.l;
            if (t <= 0.0) return kInf;
            const double m = log_scale + std::log(t);
            const double h = std::exp(shape * m + eta);
            v = theta[1] - std::log(t) + shape * m + eta - h;
            g_a = shape * (1.0 - h);
            g_c = 1.0 + shape * m * (1.0 - h);
            g_eta = 1.0 - h;
        } else if (std::isinf(o.u)) {
            const Hazard hl = hazard_at(o.l, log_scale, shape, eta);
            v = -hl.h;
            g_a = -hl.d_a;
            g_c = -hl.d_c;
            g_eta = -hl.x_factor;
        } else {
            const Hazard hl = hazard_at(o.l, log_scale, shape, eta);
            const Hazard hu = hazard_at(o.u, log_scale, shape, eta);
            const double dh = hu.h - hl.h;
            if (!(dh > 0.0) || !std::isfinite(hu.h)) return kInf;
            // log(S(l) - S(u)) = -H_l + log(1 - exp(-(H_u - H_l)))
            v = -hl.h + std::log(-std::expm1(-dh));
            const double w = 1.0 / std::expm1(dh);  // e^{-dh} / (1 - e^{-dh})
            g_a = -(1.0 + w) * hl.d_a + w * hu.d_a;
            g_c = -(1.0 + w) * hl.d_c + w * hu.d_c;
            g_eta = -(1.0 + w) * hl.x_factor + w * hu.x_factor;
        }

        if (!std::isfinite(v)) return kInf;
        loglik += v;
        if (gradient) {
            (*gradient)[0] -= g_a / n;
            (*gradient)[1] -= g_c / n;
            for (std::size_t j = 0; j < p; ++j) (*gradient)[j + 2] -= g_eta * o.x[j] / n;
        }
    }
    return -loglik / n;
}

double WeibullPhFit::cdf(double t, std::span<const double> x) const {
    if (t <= 0.0) return 0.0;
    if (x.size() != beta.size()) throw numeric_error("weibull_ph: covariate size mismatch");
    double eta = 0.0;
    for (std::size_t j = 0; j < beta.size(); ++j) eta += beta[j] * x[j];
    const double h = std::exp(shape() * (log_scale + std::log(t)) + eta);
    return -std::expm1(-h);
}

namespace {

std::vector<double> default_init(const Dataset& data) {
    // Match scale to a central finite endpoint; shape 1, no covariate effect.
    std::vector<double> mids;
    for (const auto& o : data.observations) {
        if (std::isfinite(o.u) && o.u > 0.0) mids.push_back(0.5 * (o.l + o.u));
    }
    std::vector<double> theta(data.covariate_dim + 2, 0.0);
    if (!mids.empty()) {
        std::nth_element(mids.begin(), mids.begin() + mids.size() / 2, mids.end());
        const double med = mids[mids.size() / 2];
        if (med > 0.0) theta[0] = -std::log(med);
    }
    return theta;
}

std::vector<double> observed_information_se(const Dataset& data, const std::vector<double>& theta) {
    // Central finite differences of the analytic gradient give the Hessian of
    // the mean nll; the observed information is n times that.
    const std::size_t d = theta.size();
    const double n = static_cast<double>(data.size());
    std::vector<double> hess(d * d, 0.0);
    std::vector<double> gp, gm;
    for (std::size_t k = 0; k < d; ++k) {
        const double h = 1e-5 * std::max(1.0, std::abs(theta[k]));
        auto tp = theta, tm = theta;
        tp[k] += h;
        tm[k] -= h;
        if (!std::isfinite(weibull_ph_nll(data, tp, &gp))) return {};
        if (!std::isfinite(weibull_ph_nll(data, tm, &gm))) return {};
        for (std::size_t j = 0; j < d; ++j) hess[k * d + j] = n * (gp[j] - gm[j]) / (2.0 * h);
    }
    // Symmetrize, then invert by Gauss-Jordan.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            const double v = 0.5 * (hess[i * d + j] + hess[j * d + i]);
            hess[i * d + j] = hess[j * d + i] = v;
        }
    std::vector<double> inv(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) inv[i * d + i] = 1.0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < d; ++i)
            if (std::abs(hess[i * d + col]) > std::abs(hess[piv * d + col])) piv = i;
        if (hess[piv * d + col] == 0.0) return {};
        if (piv != col)
            for (std::size_t j = 0; j < d; ++j) {
                std::swap(hess[col * d + j], hess[piv * d + j]);
                std::swap(inv[col * d + j], inv[piv * d + j]);
            }
        const double den = hess[col * d + col];
        for (std::size_t j = 0; j < d; ++j) {
            hess[col * d + j] /= den;
            inv[col * d + j] /= den;
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (i == col) continue;
            const double f = hess[i * d + col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                hess[i * d + j] -= f * hess[col * d + j];
                inv[i * d + j] -= f * inv[col * d + j];
            }
        }
    }
    std::vector<double> se(d);
    for (std::size_t k = 0; k < d; ++k) {
        if (inv[k * d + k] <= 0.0) return {};
        se[k] = std::sqrt(inv[k * d + k]);
    }
    return se;
}

}  // namespace

WeibullPhFit weibull_ph_fit(const Dataset& data, std::optional<std::vector<double>> init,
                            double tol, int max_iter) {
    if (data.empty()) throw numeric_error("weibull_ph: empty dataset");
    bool any_informative = false;
    for (const auto& o : data.observations)
        if (std::isfinite(o.u)) any_informative = true;
    if (!any_informative) throw numeric_error("weibull_ph: all rows right-censored");

    const Objective objective = [&data](const std::vector<double>& theta) {
        ValueGradient vg;
        vg.value = weibull_ph_nll(data, theta, &vg.gradient);
        if (!std::isfinite(vg.value)) vg.gradient.assign(theta.size(), 0.0);
        return vg;
    };

    std::vector<double> theta0 = init ? *init : default_init(data);
    if (theta0.size() != data.covariate_dim + 2)
        throw numeric_error("weibull_ph: init size mismatch");
    if (!std::isfinite(weibull_ph_nll(data, theta0)))
        throw numeric_error("weibull_ph: likelihood not finite at starting point");

    BfgsOptions opts;
    opts.grad_tol = tol;
    opts.max_iter = max_iter;
    BfgsResult r = minimize_bfgs(objective, theta0, opts);
    if (!r.converged) {
        // One restart from a perturbed starting point.
        auto theta1 = r.x;
        for (std::size_t k = 0; k < theta1.size(); ++k)
            theta1[k] += (k % 2 == 0 ? 0.05 : -0.05);
        if (std::isfinite(weibull_ph_nll(data, theta1))) {
            BfgsResult r2 = minimize_bfgs(objective, theta1, opts);
            if (r2.converged || r2.value < r.value) r = std::move(r2);
        }
    }

    WeibullPhFit fit;
    fit.log_scale = r.x[0];
    fit.log_shape = r.x[1];
    fit.beta.assign(r.x.begin() + 2, r.x.end());
    fit.converged = r.converged;
    fit.final_grad_norm = r.grad_norm;
    fit.iterations = r.iterations;
    fit.set_default_t_max(10.0 * data.max_finite_endpoint());
    if (r.converged) fit.std_errors = observed_information_se(data, r.x);
    return fit;
}

}  // namespace uncervals
