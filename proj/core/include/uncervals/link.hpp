#pragma once

#include <span>
#include <string>
#include <vector>

#include "uncervals/types.hpp"

namespace uncervals {

// Regression surface r(x) entering the cumulative hazard (st)^p * exp(r(x)).
// Shared between the simulator and the closed-form oracle model.
struct Link {
    enum class Kind { constant, linear, abs_linear };
    Kind kind = Kind::constant;
    std::vector<double> beta;  // per-coordinate coefficients; empty for constant

    double operator()(std::span<const double> x) const {
        switch (kind) {
            case Kind::constant:
                return 0.0;
            case Kind::linear: {
                check_dim(x.size());
                double s = 0.0;
                for (std::size_t j = 0; j < beta.size(); ++j) s += beta[j] * x[j];
                return s;
            }
            case Kind::abs_linear: {
                check_dim(x.size());
                double s = 0.0;
                for (std::size_t j = 0; j < beta.size(); ++j) s += beta[j] * std::abs(x[j]);
                return s;
            }
        }
        return 0.0;
    }

    static Link constant() { return {}; }
    static Link linear(std::vector<double> b) { return {Kind::linear, std::move(b)}; }
    static Link abs_linear(std::vector<double> b) { return {Kind::abs_linear, std::move(b)}; }

    std::string kind_name() const {
        switch (kind) {
            case Kind::constant: return "const";
            case Kind::linear: return "linear";
            case Kind::abs_linear: return "abs_linear";
        }
        return "?";
    }

    static Link from_kind_name(const std::string& name, std::vector<double> b);

  private:
    void check_dim(std::size_t n) const {
        if (beta.size() != n) throw numeric_error("link: coefficient/covariate size mismatch");
    }
};

inline Link Link::from_kind_name(const std::string& name, std::vector<double> b) {
    if (name == "const") return constant();
    if (name == "linear") return linear(std::move(b));
    if (name == "abs_linear") return abs_linear(std::move(b));
    throw io_error("unknown link kind '" + name + "'");
}

}  // namespace uncervals
