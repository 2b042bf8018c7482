#pragma once

#include <memory>
#include <span>
#include <string>

#include "uncervals/types.hpp"

namespace uncervals {

// A fitted conditional CDF F(t, x). Required shape: nondecreasing in t,
// F(0, x) >= 0, F(+inf, x) = 1. Implementations must be immutable after
// construction so they can be shared read-only across threads.
class ConditionalCdfModel {
  public:
    virtual ~ConditionalCdfModel() = default;

    virtual double cdf(double t, std::span<const double> x) const = 0;
    double survival(double t, std::span<const double> x) const { return 1.0 - cdf(t, x); }

    // inf{t >= 0 : S(t, x) <= q}. 0 when S(0, x) <= q, +inf when the level is
    // not reached on [0, t_max] (Kaplan-Meier-style plateau). The default is
    // a bisection to 1e-9 absolute, suited to continuous models; step models
    // override with a breakpoint scan.
    virtual double invert_survival(double q, std::span<const double> x, double t_max) const;

    virtual std::string name() const = 0;

    // Horizon recorded at fit time: 10x the largest finite endpoint seen.
    double default_t_max() const { return default_t_max_; }
    void set_default_t_max(double t) { default_t_max_ = t; }

  private:
    double default_t_max_ = 0.0;
};

// F(t, x) with the range and +inf conventions enforced.
double evaluate_cdf(const ConditionalCdfModel& model, double t, std::span<const double> x);

using ModelPtr = std::shared_ptr<const ConditionalCdfModel>;

}  // namespace uncervals
