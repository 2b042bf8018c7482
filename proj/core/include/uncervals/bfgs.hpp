#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace uncervals {

struct ValueGradient {
    double value = 0.0;
    std::vector<double> gradient;
};

using Objective = std::function<ValueGradient(const std::vector<double>&)>;

struct BfgsOptions {
    double grad_tol = 1e-6;  // Euclidean norm of the gradient
    int max_iter = 500;
};

struct BfgsResult {
    std::vector<double> x;
    double value = 0.0;
    std::vector<double> gradient;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace detail

// BFGS with backtracking (Armijo) line search on a dense inverse-Hessian
// approximation. Objectives may return +inf outside their domain; the line
// search backs off until the trial point is finite.
inline BfgsResult minimize_bfgs(const Objective& f, std::vector<double> x0,
                                const BfgsOptions& opts = {}) {
    const std::size_t d = x0.size();
    BfgsResult res;
    res.x = std::move(x0);

    ValueGradient cur = f(res.x);
    if (!std::isfinite(cur.value)) {
        res.value = cur.value;
        res.gradient = cur.gradient;
        res.grad_norm = detail::norm2(cur.gradient);
        return res;
    }

    std::vector<double> hinv(d * d, 0.0);
    auto reset_hinv = [&] {
        std::fill(hinv.begin(), hinv.end(), 0.0);
        for (std::size_t i = 0; i < d; ++i) hinv[i * d + i] = 1.0;
    };
    reset_hinv();

    std::vector<double> dir(d), x_new(d), s(d), y(d), hy(d);
    bool first_update = true;

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        res.iterations = iter;
        res.grad_norm = detail::norm2(cur.gradient);
        if (res.grad_norm < opts.grad_tol) {
            res.converged = true;
            break;
        }

        for (std::size_t i = 0; i < d; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < d; ++j) v += hinv[i * d + j] * cur.gradient[j];
            dir[i] = -v;
        }
        double slope = detail::dot(dir, cur.gradient);
        if (!(slope < 0.0)) {  // lost positive definiteness
            reset_hinv();
            first_update = true;
            for (std::size_t i = 0; i < d; ++i) dir[i] = -cur.gradient[i];
            slope = -detail::dot(cur.gradient, cur.gradient);
        }

        double step = 1.0;
        ValueGradient next;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < d; ++i) x_new[i] = res.x[i] + step * dir[i];
            next = f(x_new);
            if (std::isfinite(next.value) && next.value <= cur.value + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no progress possible along this direction

        for (std::size_t i = 0; i < d; ++i) {
            s[i] = x_new[i] - res.x[i];
            y[i] = next.gradient[i] - cur.gradient[i];
        }
        const double sy = detail::dot(s, y);
        if (sy > 1e-12 * detail::norm2(s) * detail::norm2(y)) {
            if (first_update) {
                const double yy = detail::dot(y, y);
                if (yy > 0.0) {
                    const double scale = sy / yy;
                    for (std::size_t i = 0; i < d; ++i) hinv[i * d + i] = scale;
                }
                first_update = false;
            }
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < d; ++i) {
                double v = 0.0;
                for (std::size_t j = 0; j < d; ++j) v += hinv[i * d + j] * y[j];
                hy[i] = v;
            }
            const double yhy = detail::dot(y, hy);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    hinv[i * d + j] += (1.0 + rho * yhy) * rho * s[i] * s[j] -
                                       rho * (s[i] * hy[j] + hy[i] * s[j]);
                }
            }
        }

        res.x = x_new;
        cur = std::move(next);
    }

    res.value = cur.value;
    res.gradient = cur.gradient;
    res.grad_norm = detail::norm2(cur.gradient);
    if (res.grad_norm < opts.grad_tol) res.converged = true;
    return res;
}

}  // namespace uncervals
