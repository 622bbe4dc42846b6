#pragma once

#include <cmath>

namespace globus {

/// Weibull survival curve parameterized by its mean rather than its scale.
///
///   S(age) = exp(-(age / scale)^shape),   scale = mean / Gamma(1 + 1/shape)
///
/// Annual demolition is applied as the discrete hazard between consecutive
/// integer ages.
class SurvivalCurve {
 public:
  SurvivalCurve(double mean_lifetime, double shape)
      : mean_(mean_lifetime), shape_(shape), scale_(mean_lifetime / std::tgamma(1.0 + 1.0 / shape)) {}

  double mean_lifetime() const noexcept { return mean_; }
  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }

  /// Cumulative hazard H(age) = (age/scale)^shape.
  double cumulative_hazard(double age) const { return std::pow(age / scale_, shape_); }

  double survival(double age) const { return std::exp(-cumulative_hazard(age)); }

  /// Fraction of floorspace standing at age-1 that is demolished before
  /// reaching age: 1 - S(age)/S(age-1). Computed from the cumulative-hazard
  /// difference so that old cohorts with S underflowing still get a finite
  /// hazard (which tends to 1).
  double annual_hazard(double age) const {
    if (age <= 0) return 0.0;
    const double prev = age - 1.0 > 0 ? cumulative_hazard(age - 1.0) : 0.0;
    return -std::expm1(-(cumulative_hazard(age) - prev));
  }

 private:
  double mean_;
  double shape_;
  double scale_;
};

/// Fraction of a cohort still standing at the given age, in [0,1].
inline double survival_fraction(const SurvivalCurve& curve, double age) {
  return age <= 0 ? 1.0 : curve.survival(age);
}

}  // namespace globus
