#pragma once

#include "uncervals/link.hpp"
#include "uncervals/model.hpp"
#include "uncervals/simgen.hpp"

namespace uncervals {

// The simulator's own conditional law F(t,x) = 1 - exp(-(scale*t)^shape *
// e^{r(x)}), used in place of a fitted estimator.
class OracleModel final : public ConditionalCdfModel {
  public:
    OracleModel(double shape, double scale, Link link)
        : shape_(shape), scale_(scale), link_(std::move(link)) {
        if (!(shape > 0.0 && scale > 0.0))
            throw numeric_error("oracle: parameters must be positive");
    }

    double shape() const { return shape_; }
    double scale() const { return scale_; }
    const Link& link() const { return link_; }

    double cdf(double t, std::span<const double> x) const override {
        return sim::aft_cdf(shape_, scale_, link_(x), t);
    }
    std::string name() const override { return "oracle"; }

  private:
    double shape_;
    double scale_;
    Link link_;
};

inline OracleModel oracle_from_config(const sim::SimConfig& c) {
    return OracleModel(c.shape, c.scale, c.link);
}

}  // namespace uncervals
