#include "uncervals/estimators.hpp"

namespace uncervals {

EstimatorSpec EstimatorSpec::from_name(const std::string& name) {
    EstimatorSpec spec;
    if (name == "turnbull")
        spec.kind = Kind::turnbull;
    else if (name == "weibph")
        spec.kind = Kind::weibull_ph;
    else if (name == "oracle")
        spec.kind = Kind::oracle;
    else if (name == "kturnbull")
        spec.kind = Kind::kernel_turnbull;
    else
        throw io_error("unknown estimator '" + name + "'");
    return spec;
}

std::string EstimatorSpec::kind_name() const {
    switch (kind) {
        case Kind::turnbull: return "turnbull";
        case Kind::weibull_ph: return "weibph";
        case Kind::oracle: return "oracle";
        case Kind::kernel_turnbull: return "kturnbull";
    }
    return "?";
}

ModelPtr fit_estimator(const EstimatorSpec& spec, const Dataset& training) {
    switch (spec.kind) {
        case EstimatorSpec::Kind::turnbull: {
            const double tol = spec.tol > 0.0 ? spec.tol : 1e-9;
            const int max_iter = spec.max_iter > 0 ? spec.max_iter : 100000;
            return std::make_shared<TurnbullFit>(turnbull_fit(training, tol, max_iter));
        }
        case EstimatorSpec::Kind::weibull_ph: {
            const double tol = spec.tol > 0.0 ? spec.tol : 1e-6;
            const int max_iter = spec.max_iter > 0 ? spec.max_iter : 500;
            return std::make_shared<WeibullPhFit>(
                weibull_ph_fit(training, std::nullopt, tol, max_iter));
        }
        case EstimatorSpec::Kind::oracle: {
            auto model =
                std::make_shared<OracleModel>(spec.oracle_shape, spec.oracle_scale,
                                              spec.oracle_link);
            model->set_default_t_max(10.0 * training.max_finite_endpoint());
            return model;
        }
        case EstimatorSpec::Kind::kernel_turnbull: {
            const double tol = spec.tol > 0.0 ? spec.tol : 1e-7;
            const int max_iter = spec.max_iter > 0 ? spec.max_iter : 3000;
            return std::make_shared<KernelTurnbullModel>(training, spec.bandwidths, tol,
                                                         max_iter);
        }
    }
    throw numeric_error("fit_estimator: bad estimator kind");
}

}  // namespace uncervals
