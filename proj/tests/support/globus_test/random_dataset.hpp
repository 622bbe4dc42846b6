#pragma once

// Seeded generator of small, valid datasets for property and oracle tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "globus/dataset.hpp"

namespace globus::testing {

struct RandomSpec {
  int max_economies = 5;
  int min_years = 10;
  int max_years = 50;
  double max_rate = 0.06;
  bool randomize_options = true;
};

inline DatasetInputs random_inputs(std::uint64_t seed, const RandomSpec& spec = {}) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  DatasetInputs in;
  in.horizon.start_year = 2000;
  in.horizon.end_year = 2000 + pick(spec.min_years, spec.max_years) - 1;
  const Year start = in.horizon.start_year, end = in.horizon.end_year;

  const int n_econ = pick(1, spec.max_economies);
  for (int i = 0; i < n_econ; ++i)
    in.economies.emplace_back("E" + std::to_string(i), "random economy " + std::to_string(i));
  in.scenarios = {ScenarioId("NR"), ScenarioId("BAU"), ScenarioId("TEP")};
  if (spec.randomize_options) {
    in.options.initial_age =
        pick(0, 3) == 0 ? InitialAgeStructure::SingleCohort : InitialAgeStructure::UniformPrehistory;
    in.options.easing = pick(0, 3) == 0 ? Easing::Logistic : Easing::Linear;
  }
  in.options.base_year = start + (end - start) / 2;

  for (const auto& e : in.economies) {
    // population: a few knots, growing or shrinking by up to ~2%/yr
    PopulationSeries pop{e, {}};
    double p = uni(1e6, 5e8);
    Year y = start;
    pop.values[y] = std::round(p);
    while (y < end) {
      const int step = std::min(end - y, pick(3, 15));
      p *= std::pow(1.0 + uni(-0.02, 0.025), step);
      y += step;
      pop.values[y] = std::round(p);
    }
    in.population.push_back(pop);

    for (auto bt : kBuildingTypes) {
      PerCapitaAnchors a{e, bt, {}};
      double pf = uni(2.0, 60.0);
      a.anchors.emplace_back(start - pick(0, 5), pf);
      const int knots = pick(0, 3);
      Year last = a.anchors.back().first;
      for (int k = 0; k < knots && last < end - 1; ++k) {
        last = pick(last + 1, end - 1);
        pf *= uni(0.8, 1.4);
        a.anchors.emplace_back(last, pf);
      }
      a.anchors.emplace_back(end + pick(0, 5), pf * uni(0.8, 1.4));
      in.per_capita.push_back(a);

      LifetimeParams lt;
      lt.economy = e;
      lt.btype = bt;
      lt.mean_lifetime = uni(15.0, 90.0);
      lt.shape = uni(1.0, 8.0);
      lt.renovation_extension = uni(5.0, 40.0);
      lt.eligibility_age = uni(0.0, 0.9 * lt.mean_lifetime);
      in.lifetimes.push_back(lt);

      in.schedules.push_back({ScenarioId("NR"), e, bt, {{start, 0.0}}});
      for (const char* s : {"BAU", "TEP"}) {
        RenovationSchedule sch{ScenarioId(s), e, bt, {}};
        const double scale = std::string(s) == "TEP" ? spec.max_rate : spec.max_rate / 2;
        sch.rates[start] = uni(0.0, scale);
        for (int k = pick(0, 4); k > 0; --k) sch.rates[pick(start + 1, end)] = uni(0.0, scale);
        in.schedules.push_back(sch);
      }
    }
  }
  return in;
}

inline Dataset random_dataset(std::uint64_t seed, const RandomSpec& spec = {}) {
  return build_dataset(random_inputs(seed, spec));
}

}  // namespace globus::testing
