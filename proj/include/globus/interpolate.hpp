#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <utility>
#include <vector>

#include "globus/domain.hpp"

namespace globus {

enum class Easing { Linear, Logistic };

namespace detail {

// Steepness of the logistic easing curve on the unit interval.
inline constexpr double kLogisticSteepness = 10.0;

// Maps u in [0,1] to [0,1]; monotone, fixes both endpoints.
inline double ease(double u, Easing easing) {
  if (easing == Easing::Linear) return u;
  const double s = kLogisticSteepness;
  auto sigma = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  const double lo = sigma(-s / 2), hi = sigma(s / 2);
  return (sigma(s * (u - 0.5)) - lo) / (hi - lo);
}

}  // namespace detail

/// Piecewise interpolation over (year, value) knots sorted by year with
/// constant hold outside the knot range. Knots must be non-empty.
template <typename Knots>
double interpolate_knots(const Knots& knots, double t, Easing easing = Easing::Linear) {
  auto first = std::begin(knots);
  auto last = std::end(knots);
  const auto& front = *first;
  const auto& back = *std::prev(last);
  if (t <= front.first) return front.second;
  if (t >= back.first) return back.second;

  auto upper = std::upper_bound(first, last, t,
                                [](double v, const auto& knot) { return v < knot.first; });
  auto lower = std::prev(upper);
  if (lower->first == t) return lower->second;
  const double y0 = lower->first, y1 = upper->first;
  const double v0 = lower->second, v1 = upper->second;
  const double w = detail::ease((t - y0) / (y1 - y0), easing);
  return v0 + (v1 - v0) * w;
}

/// Per-capita floorspace anchors (m²/person) for one cell.
struct PerCapitaAnchors {
  EconomyId economy;
  BuildingType btype = BuildingType::Residential;
  std::vector<std::pair<Year, double>> anchors;  // strictly increasing years

  friend bool operator==(const PerCapitaAnchors&, const PerCapitaAnchors&) = default;
};

/// Population in persons for one economy; sparse years allowed.
struct PopulationSeries {
  EconomyId economy;
  std::map<Year, double> values;

  friend bool operator==(const PopulationSeries&, const PopulationSeries&) = default;
};

inline double interpolate_pf(const PerCapitaAnchors& a, Year t, Easing easing = Easing::Linear) {
  return interpolate_knots(a.anchors, static_cast<double>(t), easing);
}

inline double interpolate_population(const PopulationSeries& s, Year t) {
  return interpolate_knots(s.values, static_cast<double>(t));
}

}  // namespace globus
