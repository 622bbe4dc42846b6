#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "globus/dataset.hpp"
#include "globus/domain.hpp"
#include "globus/error.hpp"
#include "globus/turnover.hpp"

namespace globus {

enum class Metric { PerCapitaFloorspace, CarbonPerM2, CarbonPerCapita, Cagr, MultipleVsBase };

inline constexpr std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::PerCapitaFloorspace: return "m2_per_capita";
    case Metric::CarbonPerM2: return "carbon_per_m2";
    case Metric::CarbonPerCapita: return "carbon_per_capita";
    case Metric::Cagr: return "cagr";
    case Metric::MultipleVsBase: return "multiple_vs_base";
  }
  return "";
}

inline constexpr std::string_view metric_unit(Metric m) {
  switch (m) {
    case Metric::PerCapitaFloorspace: return "m2/person";
    case Metric::CarbonPerM2: return "kgCO2/m2";
    case Metric::CarbonPerCapita: return "kgCO2/person";
    case Metric::Cagr: return "1/yr";
    case Metric::MultipleVsBase: return "1";
  }
  return "";
}

/// Label used for rows aggregated over both building types.
inline constexpr std::string_view kTotalLabel = "total";

struct MetricRow {
  ScenarioId scenario;
  std::string economy;        // economy code or group name
  std::string building_type;  // "residential", "non_residential" or "total"
  Year year = 0;
  Metric metric = Metric::PerCapitaFloorspace;
  double value = 0;

  std::string_view name() const { return metric_name(metric); }
  std::string_view unit() const { return metric_unit(metric); }
};

// ---------------------------------------------------------------------------
// Scalar indicators

inline double per_capita_floorspace(FloorArea bs_mm2, double population) {
  if (!(population > 0))
    throw Error(ErrorKind::ZeroPopulation, "population must be > 0 for per-capita floorspace");
  return bs_mm2 * 1e6 / population;
}

/// MtCO₂ over Mm² → kgCO₂/m².
inline double carbon_intensity(double emissions_mt, FloorArea bs_mm2) {
  if (!(bs_mm2 > 0)) throw Error(ErrorKind::ZeroStock, "stock must be > 0 for carbon intensity");
  return emissions_mt * 1e9 / (bs_mm2 * 1e6);
}

/// MtCO₂ over persons → kgCO₂/person.
inline double carbon_per_capita(double emissions_mt, double population) {
  if (!(population > 0))
    throw Error(ErrorKind::ZeroPopulation, "population must be > 0 for carbon per capita");
  return emissions_mt * 1e9 / population;
}

inline double cagr(double start_value, double end_value, int years) {
  if (!(start_value > 0))
    throw Error(ErrorKind::NonPositiveStart, "cagr needs a positive start value");
  if (years <= 0) throw Error(ErrorKind::InvalidArgument, "cagr needs years > 0");
  return std::pow(end_value / start_value, 1.0 / years) - 1.0;
}

// ---------------------------------------------------------------------------
// Aggregates over records

/// A set of economies and building types to sum over.
struct Grouping {
  std::vector<std::string> economies;
  std::vector<BuildingType> btypes{kBuildingTypes.begin(), kBuildingTypes.end()};
};

/// Total scenario stock of a grouping in one year.
inline FloorArea group_stock(const std::vector<FlowRecord>& records, const ScenarioId& scenario,
                             Year year, const Grouping& g) {
  const std::set<std::string> econ(g.economies.begin(), g.economies.end());
  const std::set<BuildingType> types(g.btypes.begin(), g.btypes.end());
  FloorArea sum = 0;
  std::size_t hits = 0;
  for (const auto& r : records) {
    if (r.year != year || r.scenario != scenario) continue;
    if (!econ.contains(r.economy.code) || !types.contains(r.btype)) continue;
    sum += r.bs;
    ++hits;
  }
  if (hits != econ.size() * types.size())
    throw Error(ErrorKind::YearOutOfRange, "no complete records for scenario " + scenario.name() +
                                               " in year " + std::to_string(year));
  return sum;
}

/// Σ BS(target) / Σ BS(base) over the grouping.
inline double stock_multiple(const std::vector<FlowRecord>& records, const ScenarioId& scenario,
                             Year base_year, Year target_year, const Grouping& g) {
  const FloorArea base = group_stock(records, scenario, base_year, g);
  const FloorArea target = group_stock(records, scenario, target_year, g);
  if (!(base > 0)) throw Error(ErrorKind::ZeroStock, "group stock is zero in base year");
  return target / base;
}

/// Σ nb over every record of the scenario.
inline double cumulative_nb(const std::vector<FlowRecord>& records) {
  double sum = 0;
  for (const auto& r : records) sum += r.nb;
  return sum;
}

/// Average annual reduction in global new construction (Mm²/yr) when every
/// renovation rate of the base scenario is raised by delta_rate.
inline double renovation_sensitivity(const Dataset& dataset, const ScenarioId& base,
                                     double delta_rate, unsigned threads = 1,
                                     std::optional<double> base_cumulative_nb = std::nullopt) {
  if (!(delta_rate >= 0) || !std::isfinite(delta_rate))
    throw Error(ErrorKind::InvalidArgument, "delta_rate must be >= 0");
  const double years = dataset.horizon().end_year - dataset.horizon().start_year;
  if (delta_rate == 0) return 0.0;
  const double base_nb =
      base_cumulative_nb ? *base_cumulative_nb
                         : cumulative_nb(run_scenario(dataset, base, 0.0, threads));
  const double raised_nb = cumulative_nb(run_scenario(dataset, base, delta_rate, threads));
  return (base_nb - raised_nb) / years;
}

/// Every indicator derivable from the records and the dataset, sorted by
/// (scenario, economy, building_type, year, metric).
inline std::vector<MetricRow> derive_metrics(const Dataset& dataset,
                                             const std::vector<FlowRecord>& records) {
  const Horizon& h = dataset.horizon();
  const Year base_year = dataset.options().base_year;
  std::vector<MetricRow> out;

  // (scenario, economy) → per-year stock by type.
  struct Stocks {
    std::vector<double> by_type[2];
  };
  std::map<std::pair<std::string, std::string>, Stocks> stocks;
  std::set<std::string> scenario_names;
  for (const auto& r : records) {
    auto& s = stocks[{r.scenario.name(), r.economy.code}];
    auto& v = s.by_type[static_cast<int>(r.btype)];
    if (v.empty()) v.assign(h.size(), std::nan(""));
    v[h.index(r.year)] = r.bs;
    scenario_names.insert(r.scenario.name());
  }

  auto push = [&](const std::string& scen, const std::string& econ, std::string_view bt, Year y,
                  Metric m, double v) {
    out.push_back({ScenarioId(scen), econ, std::string(bt), y, m, v});
  };

  for (const auto& [key, s] : stocks) {
    const auto& [scen, code] = key;
    const bool complete = !s.by_type[0].empty() && !s.by_type[1].empty();
    for (Year y = h.start_year; y <= h.end_year; ++y) {
      const double pop = dataset.population(code, y);
      double total = 0;
      std::optional<double> total_emissions = 0.0;
      for (auto bt : kBuildingTypes) {
        const auto& v = s.by_type[static_cast<int>(bt)];
        if (v.empty()) {
          total_emissions.reset();
          continue;
        }
        const double bs = v[h.index(y)];
        total += bs;
        const auto label = to_string(bt);
        push(scen, code, label, y, Metric::PerCapitaFloorspace, per_capita_floorspace(bs, pop));
        const Cell cell{dataset.economy(code), bt};
        if (auto e = dataset.emissions(cell, y)) {
          if (bs > 0) push(scen, code, label, y, Metric::CarbonPerM2, carbon_intensity(*e, bs));
          push(scen, code, label, y, Metric::CarbonPerCapita, carbon_per_capita(*e, pop));
          if (total_emissions) *total_emissions += *e;
        } else {
          total_emissions.reset();
        }
        const double base = v[h.index(base_year)];
        if (base > 0) push(scen, code, label, y, Metric::MultipleVsBase, bs / base);
      }
      if (!complete) continue;
      push(scen, code, kTotalLabel, y, Metric::PerCapitaFloorspace, per_capita_floorspace(total, pop));
      if (total_emissions) {
        if (total > 0) push(scen, code, kTotalLabel, y, Metric::CarbonPerM2, carbon_intensity(*total_emissions, total));
        push(scen, code, kTotalLabel, y, Metric::CarbonPerCapita, carbon_per_capita(*total_emissions, pop));
      }
      const double base_total = s.by_type[0][h.index(base_year)] + s.by_type[1][h.index(base_year)];
      if (base_total > 0) push(scen, code, kTotalLabel, y, Metric::MultipleVsBase, total / base_total);
    }

    const int span = h.end_year - h.start_year;
    for (auto bt : kBuildingTypes) {
      const auto& v = s.by_type[static_cast<int>(bt)];
      if (v.empty() || !(v.front() > 0)) continue;
      push(scen, code, to_string(bt), h.end_year, Metric::Cagr, cagr(v.front(), v.back(), span));
    }
    if (complete) {
      const double first = s.by_type[0].front() + s.by_type[1].front();
      const double last = s.by_type[0].back() + s.by_type[1].back();
      if (first > 0) push(scen, code, kTotalLabel, h.end_year, Metric::Cagr, cagr(first, last, span));
    }
  }

  // Group multiples.
  for (const auto& scen : scenario_names) {
    const ScenarioId id(scen);
    for (const auto& [group, members] : dataset.groups()) {
      if (members.empty()) continue;
      const Grouping g{members};
      const FloorArea base = group_stock(records, id, base_year, g);
      if (!(base > 0)) continue;
      for (Year y = h.start_year; y <= h.end_year; ++y)
        push(scen, group, kTotalLabel, y, Metric::MultipleVsBase, group_stock(records, id, y, g) / base);
    }
  }

  std::sort(out.begin(), out.end(), [](const MetricRow& a, const MetricRow& b) {
    return std::tie(a.scenario, a.economy, a.building_type, a.year, a.metric) <
           std::tie(b.scenario, b.economy, b.building_type, b.year, b.metric);
  });
  return out;
}

}  // namespace globus
