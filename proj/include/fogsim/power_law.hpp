#pragma once
// Bounded power-law (bounded Pareto) distributions parameterized by their
// mean. A spec (mean, exponent, ratio) describes the distribution with
// density proportional to x^-(exponent+1) on [L, H], H = ratio * L, where L
// is solved in closed form so the analytic mean equals `mean`. Bounding the
// support keeps the mean finite for exponents below 1; ratio = 1 collapses
// the distribution to a point mass at the mean.

#include <cmath>
#include <stdexcept>

#include "fogsim/rng.hpp"

namespace fogsim {

struct PowerLawSpec {
  double mean = 1.0;
  double exponent = 0.48;  // steepness factor, in (0, 2]
  double ratio = 1e6;      // upper/lower support ratio H / L, >= 1

  void validate() const {
    if (!(mean > 0.0))
      throw std::invalid_argument("PowerLawSpec: mean must be > 0");
    if (!(exponent > 0.0 && exponent <= 2.0))
      throw std::invalid_argument("PowerLawSpec: exponent must lie in (0, 2]");
    if (!(ratio >= 1.0))
      throw std::invalid_argument("PowerLawSpec: ratio must be >= 1");
  }
};

// E[X] / L for a bounded Pareto with shape a on [L, r*L]. The a = 1 case has
// its own (logarithmic) mean formula; the generic expression is 0/0 there.
inline double bounded_pareto_mean_factor(double a, double r) {
  if (r == 1.0) return 1.0;
  if (a == 1.0) return std::log(r) / (1.0 - 1.0 / r);
  return a * (std::pow(r, 1.0 - a) - 1.0) /
         ((1.0 - a) * (1.0 - std::pow(r, -a)));
}

class BoundedPareto {
 public:
  explicit BoundedPareto(const PowerLawSpec& spec) : shape_(spec.exponent) {
    spec.validate();
    mean_ = spec.mean;
    if (spec.ratio == 1.0) {
      lower_ = upper_ = spec.mean;
      tail_mass_ = 0.0;
      return;
    }
    lower_ = spec.mean / bounded_pareto_mean_factor(spec.exponent, spec.ratio);
    upper_ = lower_ * spec.ratio;
    tail_mass_ = 1.0 - std::pow(spec.ratio, -shape_);
  }

  bool degenerate() const { return tail_mass_ == 0.0; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double shape() const { return shape_; }
  double mean() const { return mean_; }

  // Inverse CDF; u in [0, 1] maps onto [L, H].
  double quantile(double u) const {
    if (degenerate()) return lower_;
    return lower_ * std::pow(1.0 - u * tail_mass_, -1.0 / shape_);
  }

  double cdf(double x) const {
    if (degenerate()) return x < lower_ ? 0.0 : 1.0;
    if (x <= lower_) return 0.0;
    if (x >= upper_) return 1.0;
    return (1.0 - std::pow(lower_ / x, shape_)) / tail_mass_;
  }

  double sample(RngStream& rng) const { return quantile(rng.uniform()); }

 private:
  double shape_;
  double mean_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  double tail_mass_ = 0.0;  // 1 - ratio^-shape; 0 marks the point-mass case
};

inline double sample_bounded_pareto(const PowerLawSpec& spec, RngStream& rng) {
  return BoundedPareto(spec).sample(rng);
}

}  // namespace fogsim
