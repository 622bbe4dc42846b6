#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "globus/domain.hpp"
#include "globus/error.hpp"
#include "globus/interpolate.hpp"

namespace globus {

/// One (economy, building type) pair.
struct Cell {
  EconomyId economy;
  BuildingType btype = BuildingType::Residential;

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.economy == b.economy && a.btype == b.btype;
  }
  friend std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
    if (auto c = a.economy.code <=> b.economy.code; c != 0) return c;
    return to_string(a.btype).compare(to_string(b.btype)) <=> 0;
  }
};

inline std::string describe(const Cell& c) {
  return c.economy.code + "/" + std::string(to_string(c.btype));
}

/// Weibull lifetime parameters of one cell, in years.
struct LifetimeParams {
  EconomyId economy;
  BuildingType btype = BuildingType::Residential;
  double mean_lifetime = 50;
  double shape = 4;
  double renovation_extension = 25;
  double eligibility_age = 20;

  friend bool operator==(const LifetimeParams&, const LifetimeParams&) = default;
};

/// Returns a description of the first violated constraint, if any.
inline std::optional<std::string> check_lifetime(const LifetimeParams& p) {
  if (!(std::isfinite(p.mean_lifetime) && p.mean_lifetime > 0))
    return "mean_lifetime_years must be > 0 (got " + std::to_string(p.mean_lifetime) + ")";
  if (!(std::isfinite(p.shape) && p.shape >= 1))
    return "weibull_shape must be >= 1 (got " + std::to_string(p.shape) + ")";
  if (!(std::isfinite(p.renovation_extension) && p.renovation_extension > 0))
    return "renovation_extension_years must be > 0 (got " +
           std::to_string(p.renovation_extension) + ")";
  if (!(std::isfinite(p.eligibility_age) && p.eligibility_age >= 0 &&
        p.eligibility_age < p.mean_lifetime))
    return "eligibility_age_years must satisfy 0 <= age < mean_lifetime_years (got " +
           std::to_string(p.eligibility_age) + ")";
  return std::nullopt;
}

inline std::optional<std::string> check_rate(double r) {
  if (!(std::isfinite(r) && r >= 0 && r <= 1))
    return "renovation_rate must be within [0,1] (got " + std::to_string(r) + ")";
  return std::nullopt;
}

/// Annual renovation rates (fraction of eligible stock per year). Values
/// step-hold between defined years.
struct RenovationSchedule {
  ScenarioId scenario;
  EconomyId economy;
  BuildingType btype = BuildingType::Residential;
  std::map<Year, double> rates;

  friend bool operator==(const RenovationSchedule&, const RenovationSchedule&) = default;

  /// Step-hold lookup; nullopt before the first defined year.
  std::optional<double> rate_at(Year t) const {
    auto it = rates.upper_bound(t);
    if (it == rates.begin()) return std::nullopt;
    return std::prev(it)->second;
  }
};

/// Operational emissions in MtCO₂ per year.
struct EmissionSeries {
  EconomyId economy;
  BuildingType btype = BuildingType::Residential;
  std::map<Year, double> values;

  friend bool operator==(const EmissionSeries&, const EmissionSeries&) = default;
};

enum class ClampMode { RetireOldest, Strict };
enum class InitialAgeStructure { UniformPrehistory, SingleCohort };

struct EngineOptions {
  ClampMode clamp_mode = ClampMode::RetireOldest;
  Easing easing = Easing::Linear;
  InitialAgeStructure initial_age = InitialAgeStructure::UniformPrehistory;
  std::string output_dir = "out";
  Year base_year = 2020;
  std::string sensitivity_base = "BAU";

  friend bool operator==(const EngineOptions&, const EngineOptions&) = default;
};

/// Raw, unvalidated inputs. Filled by the file loader or directly by code.
struct DatasetInputs {
  Horizon horizon;
  std::vector<EconomyId> economies;
  std::vector<ScenarioId> scenarios;
  std::map<std::string, std::vector<std::string>> groups;
  EngineOptions options;
  std::vector<PopulationSeries> population;
  std::vector<PerCapitaAnchors> per_capita;
  std::vector<LifetimeParams> lifetimes;
  std::vector<RenovationSchedule> schedules;
  std::vector<EmissionSeries> emissions;
};

/// Validated, fully interpolated inputs. Every lookup for a cell, year and
/// configured scenario inside the horizon succeeds. Immutable once built.
class Dataset {
 public:
  const Horizon& horizon() const noexcept { return horizon_; }
  const std::vector<EconomyId>& economies() const noexcept { return economies_; }
  const std::vector<ScenarioId>& scenarios() const noexcept { return scenarios_; }
  const std::map<std::string, std::vector<std::string>>& groups() const noexcept {
    return groups_;
  }
  const EngineOptions& options() const noexcept { return options_; }

  /// All cells, sorted by (economy code, building type name).
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  const EconomyId& economy(const std::string& code) const {
    for (const auto& e : economies_)
      if (e.code == code) return e;
    throw Error(ErrorKind::CoverageError, "unknown economy '" + code + "'");
  }

  double population(const std::string& code, Year t) const {
    return dense_at(population_.at(code), t, "population of " + code);
  }

  double per_capita(const Cell& c, Year t) const {
    return dense_at(per_capita_.at(key(c)), t, "per-capita floorspace of " + describe(c));
  }

  const PerCapitaAnchors& anchors(const Cell& c) const { return anchors_.at(key(c)); }
  const PopulationSeries& population_series(const std::string& code) const {
    return population_series_.at(code);
  }

  const LifetimeParams& lifetime(const Cell& c) const { return lifetimes_.at(key(c)); }

  bool has_schedule(const ScenarioId& s) const {
    if (s.is_no_renovation()) return true;
    for (const auto& c : cells_)
      if (!rates_.contains(schedule_key(s, c))) return false;
    return !cells_.empty();
  }

  /// Dense per-year rates over the horizon. All zero for "NR".
  std::vector<double> rates(const ScenarioId& s, const Cell& c) const {
    if (s.is_no_renovation()) return std::vector<double>(horizon_.size(), 0.0);
    auto it = rates_.find(schedule_key(s, c));
    if (it == rates_.end())
      throw Error(ErrorKind::CoverageError,
                  "no renovation schedule for scenario " + s.name() + ", cell " + describe(c));
    return it->second;
  }

  /// MtCO₂ for the cell and year, if present in the emissions input.
  std::optional<double> emissions(const Cell& c, Year t) const {
    auto it = emissions_.find(key(c));
    if (it == emissions_.end()) return std::nullopt;
    auto v = it->second.values.find(t);
    if (v == it->second.values.end()) return std::nullopt;
    return v->second;
  }

  /// Copy with every population value multiplied by factor.
  Dataset with_population_scaled(double factor) const {
    Dataset d = *this;
    for (auto& [code, values] : d.population_)
      for (auto& v : values) v *= factor;
    for (auto& [code, series] : d.population_series_)
      for (auto& [y, v] : series.values) v *= factor;
    return d;
  }

  /// Copy with the horizon's scenario list replaced.
  Dataset with_scenarios(std::vector<ScenarioId> scenarios) const {
    Dataset d = *this;
    d.scenarios_ = std::move(scenarios);
    return d;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  friend Dataset build_dataset(const DatasetInputs& in);
  using Key = std::pair<std::string, int>;
  using ScheduleKey = std::tuple<std::string, std::string, int>;

  static Key key(const Cell& c) { return {c.economy.code, static_cast<int>(c.btype)}; }
  static ScheduleKey schedule_key(const ScenarioId& s, const Cell& c) {
    return {s.name(), c.economy.code, static_cast<int>(c.btype)};
  }

  double dense_at(const std::vector<double>& v, Year t, const std::string& what) const {
    if (!horizon_.contains(t))
      throw Error(ErrorKind::YearOutOfRange,
                  what + ": year " + std::to_string(t) + " outside horizon");
    return v[horizon_.index(t)];
  }

  Horizon horizon_;
  std::vector<EconomyId> economies_;
  std::vector<ScenarioId> scenarios_;
  std::map<std::string, std::vector<std::string>> groups_;
  EngineOptions options_;
  std::vector<Cell> cells_;
  std::map<std::string, PopulationSeries> population_series_;
  std::map<std::string, std::vector<double>> population_;
  std::map<Key, PerCapitaAnchors> anchors_;
  std::map<Key, std::vector<double>> per_capita_;
  std::map<Key, LifetimeParams> lifetimes_;
  std::map<ScheduleKey, std::vector<double>> rates_;
  std::map<Key, EmissionSeries> emissions_;
};

/// Validates inputs and produces the dense dataset. Throws DatasetError
/// listing every problem found.
inline Dataset build_dataset(const DatasetInputs& in) {
  std::vector<Diagnostic> diags;
  auto fail = [&](ErrorKind k, std::string msg) { diags.push_back({k, std::move(msg)}); };

  Dataset d;
  d.horizon_ = in.horizon;
  d.options_ = in.options;
  d.groups_ = in.groups;
  const Horizon& h = in.horizon;
  if (h.end_year <= h.start_year) {
    fail(ErrorKind::RangeError, "horizon end_year " + std::to_string(h.end_year) +
                                    " must be after start_year " + std::to_string(h.start_year));
    throw DatasetError(std::move(diags));
  }
  if (!h.contains(in.options.base_year))
    fail(ErrorKind::RangeError,
         "options.base_year " + std::to_string(in.options.base_year) + " outside horizon");

  // Economies: unique codes, canonical order.
  d.economies_ = in.economies;
  std::sort(d.economies_.begin(), d.economies_.end());
  for (std::size_t i = 1; i < d.economies_.size(); ++i)
    if (d.economies_[i] == d.economies_[i - 1])
      fail(ErrorKind::SchemaError, "duplicate economy code '" + d.economies_[i].code + "'");
  if (d.economies_.empty()) fail(ErrorKind::SchemaError, "no economies configured");
  auto known = [&](const std::string& code) {
    return std::binary_search(d.economies_.begin(), d.economies_.end(), EconomyId(code));
  };
  for (const auto& e : d.economies_)
    for (auto bt : kBuildingTypes) d.cells_.push_back({e, bt});
  std::sort(d.cells_.begin(), d.cells_.end());

  d.scenarios_ = in.scenarios;
  for (std::size_t i = 0; i < d.scenarios_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (d.scenarios_[i] == d.scenarios_[j])
        fail(ErrorKind::SchemaError, "duplicate scenario '" + d.scenarios_[i].name() + "'");

  for (const auto& [group, members] : d.groups_)
    for (const auto& code : members)
      if (!known(code))
        fail(ErrorKind::SchemaError, "group '" + group + "' lists unknown economy '" + code + "'");

  // Population.
  for (const auto& series : in.population) {
    const auto& code = series.economy.code;
    if (!known(code)) {
      fail(ErrorKind::SchemaError, "population given for unknown economy '" + code + "'");
      continue;
    }
    if (d.population_series_.contains(code)) {
      fail(ErrorKind::SchemaError, "population series for '" + code + "' given twice");
      continue;
    }
    bool ok = !series.values.empty();
    for (const auto& [y, v] : series.values) {
      if (!(std::isfinite(v) && v > 0)) {
        fail(ErrorKind::RangeError, "population of " + code + " in " + std::to_string(y) +
                                        " must be > 0 (got " + std::to_string(v) + ")");
        ok = false;
      }
    }
    if (!ok) continue;
    const Year first = series.values.begin()->first, last = series.values.rbegin()->first;
    if (first > h.start_year || last < h.end_year) {
      std::string gaps;
      if (first > h.start_year)
        gaps += std::to_string(h.start_year) + "-" + std::to_string(first - 1);
      if (last < h.end_year)
        gaps += (gaps.empty() ? "" : ", ") + std::to_string(last + 1) + "-" +
                std::to_string(h.end_year);
      fail(ErrorKind::CoverageError, "population for " + code + " does not cover years " + gaps);
      continue;
    }
    PopulationSeries stored = series;
    stored.economy = d.economy(code);
    std::vector<double> dense(h.size());
    for (Year y = h.start_year; y <= h.end_year; ++y)
      dense[h.index(y)] = interpolate_population(stored, y);
    d.population_.emplace(code, std::move(dense));
    d.population_series_.emplace(code, std::move(stored));
  }
  for (const auto& e : d.economies_)
    if (!d.population_series_.contains(e.code) &&
        std::none_of(in.population.begin(), in.population.end(),
                     [&](const PopulationSeries& s) { return s.economy == e; }))
      fail(ErrorKind::CoverageError, "population for " + e.code + " missing for years " +
                                         std::to_string(h.start_year) + "-" +
                                         std::to_string(h.end_year));

  // Per-capita floorspace anchors.
  std::map<Dataset::Key, bool> seen_pf;
  for (const auto& a : in.per_capita) {
    const std::string where = a.economy.code + "/" + std::string(to_string(a.btype));
    if (!known(a.economy.code)) {
      fail(ErrorKind::SchemaError,
           "per-capita floorspace given for unknown economy '" + a.economy.code + "'");
      continue;
    }
    const Cell cell{d.economy(a.economy.code), a.btype};
    if (seen_pf[Dataset::key(cell)]) {
      fail(ErrorKind::SchemaError, "per-capita anchors for " + where + " given twice");
      continue;
    }
    seen_pf[Dataset::key(cell)] = true;
    bool ok = true;
    if (a.anchors.size() < 2) {
      fail(ErrorKind::CoverageError, "per-capita floorspace for " + where +
                                         " needs at least 2 anchors (got " +
                                         std::to_string(a.anchors.size()) + ")");
      ok = false;
    }
    for (std::size_t i = 0; i < a.anchors.size(); ++i) {
      const auto& [y, v] = a.anchors[i];
      if (i > 0 && y <= a.anchors[i - 1].first) {
        fail(ErrorKind::SchemaError, "per-capita anchor years for " + where +
                                         " must be strictly increasing (at " +
                                         std::to_string(y) + ")");
        ok = false;
      }
      if (!(std::isfinite(v) && v > 0)) {
        fail(ErrorKind::RangeError, "per-capita floorspace for " + where + " in " +
                                        std::to_string(y) + " must be > 0 (got " +
                                        std::to_string(v) + ")");
        ok = false;
      }
    }
    if (!ok) continue;
    PerCapitaAnchors stored = a;
    stored.economy = cell.economy;
    std::vector<double> dense(h.size());
    for (Year y = h.start_year; y <= h.end_year; ++y)
      dense[h.index(y)] = interpolate_pf(stored, y, in.options.easing);
    d.per_capita_.emplace(Dataset::key(cell), std::move(dense));
    d.anchors_.emplace(Dataset::key(cell), std::move(stored));
  }

  // Lifetimes.
  for (const auto& p : in.lifetimes) {
    const std::string where = p.economy.code + "/" + std::string(to_string(p.btype));
    if (!known(p.economy.code)) {
      fail(ErrorKind::SchemaError,
           "lifetime parameters given for unknown economy '" + p.economy.code + "'");
      continue;
    }
    const Cell cell{d.economy(p.economy.code), p.btype};
    if (d.lifetimes_.contains(Dataset::key(cell))) {
      fail(ErrorKind::SchemaError, "lifetime parameters for " + where + " given twice");
      continue;
    }
    if (auto problem = check_lifetime(p)) {
      fail(ErrorKind::RangeError, "lifetime parameters for " + where + ": " + *problem);
      continue;
    }
    LifetimeParams stored = p;
    stored.economy = cell.economy;
    d.lifetimes_.emplace(Dataset::key(cell), stored);
  }

  // Renovation schedules.
  for (const auto& s : in.schedules) {
    const std::string where =
        s.scenario.name() + "/" + s.economy.code + "/" + std::string(to_string(s.btype));
    if (!known(s.economy.code)) {
      fail(ErrorKind::SchemaError,
           "renovation schedule given for unknown economy '" + s.economy.code + "'");
      continue;
    }
    const Cell cell{d.economy(s.economy.code), s.btype};
    if (d.rates_.contains(Dataset::schedule_key(s.scenario, cell))) {
      fail(ErrorKind::SchemaError, "renovation schedule for " + where + " given twice");
      continue;
    }
    bool ok = !s.rates.empty();
    for (const auto& [y, r] : s.rates) {
      if (auto problem = check_rate(r)) {
        fail(ErrorKind::RangeError, "renovation schedule " + where + " year " +
                                        std::to_string(y) + ": " + *problem);
        ok = false;
      } else if (s.scenario.is_no_renovation() && r != 0) {
        fail(ErrorKind::RangeError, "renovation schedule " + where + " year " +
                                        std::to_string(y) +
                                        ": scenario NR must have zero renovation rate");
        ok = false;
      }
    }
    if (!ok) continue;
    if (s.rates.begin()->first > h.start_year) {
      fail(ErrorKind::CoverageError,
           "renovation schedule " + where + " undefined for years " +
               std::to_string(h.start_year) + "-" + std::to_string(s.rates.begin()->first - 1));
      continue;
    }
    std::vector<double> dense(h.size());
    for (Year y = h.start_year; y <= h.end_year; ++y) dense[h.index(y)] = *s.rate_at(y);
    d.rates_.emplace(Dataset::schedule_key(s.scenario, cell), std::move(dense));
  }

  // Emissions (optional).
  for (const auto& e : in.emissions) {
    if (!known(e.economy.code)) {
      fail(ErrorKind::SchemaError, "emissions given for unknown economy '" + e.economy.code + "'");
      continue;
    }
    const Cell cell{d.economy(e.economy.code), e.btype};
    auto& stored = d.emissions_[Dataset::key(cell)];
    stored.economy = cell.economy;
    stored.btype = cell.btype;
    for (const auto& [y, v] : e.values) {
      if (!(std::isfinite(v) && v >= 0)) {
        fail(ErrorKind::RangeError, "emissions for " + describe(cell) + " in " +
                                        std::to_string(y) + " must be >= 0");
        continue;
      }
      if (!stored.values.emplace(y, v).second)
        fail(ErrorKind::SchemaError,
             "emissions for " + describe(cell) + " in " + std::to_string(y) + " given twice");
    }
  }

  // Coverage of the run matrix.
  for (const auto& cell : d.cells_) {
    if (!d.per_capita_.contains(Dataset::key(cell)) &&
        !seen_pf.contains(Dataset::key(cell)))
      fail(ErrorKind::CoverageError, "per-capita floorspace missing for " + describe(cell));
    if (!d.lifetimes_.contains(Dataset::key(cell)) &&
        std::none_of(in.lifetimes.begin(), in.lifetimes.end(), [&](const LifetimeParams& p) {
          return p.economy == cell.economy && p.btype == cell.btype;
        }))
      fail(ErrorKind::CoverageError, "lifetime parameters missing for " + describe(cell));
    for (const auto& s : d.scenarios_) {
      if (s.is_no_renovation()) continue;
      if (!d.rates_.contains(Dataset::schedule_key(s, cell)) &&
          std::none_of(in.schedules.begin(), in.schedules.end(),
                       [&](const RenovationSchedule& r) {
                         return r.scenario == s && r.economy == cell.economy &&
                                r.btype == cell.btype;
                       }))
        fail(ErrorKind::CoverageError, "renovation schedule missing for scenario " + s.name() +
                                           ", cell " + describe(cell));
    }
  }

  if (!diags.empty()) throw DatasetError(std::move(diags));
  return d;
}

}  // namespace globus
