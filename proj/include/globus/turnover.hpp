#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "globus/dataset.hpp"
#include "globus/domain.hpp"
#include "globus/error.hpp"
#include "globus/parallel.hpp"
#include "globus/projection.hpp"
#include "globus/survival.hpp"

namespace globus {

/// Entries below this area are dropped from the ledger after each step.
inline constexpr FloorArea kPurgeThreshold = 1e-12;

/// Age-structured floorspace of one cell.
///
/// The ledger holds the physical floorspace standing: original cohorts keyed
/// by construction year and renovated cohorts keyed by renovation year.
/// Renovation moves area between the two maps; demolition removes it; new
/// construction adds it. The reported scenario stock is the no-renovation
/// stock minus cumulative (RB - DRB), and the physical total satisfies
///   total() == bs_nr - cumulative_rb == bs - cumulative_drb.
struct CohortLedger {
  std::map<Year, FloorArea> original;
  std::map<Year, FloorArea> renovated;
  FloorArea cumulative_rb = 0;
  FloorArea cumulative_drb = 0;

  FloorArea total() const {
    FloorArea sum = 0;
    for (const auto& [y, a] : original) sum += a;
    for (const auto& [y, a] : renovated) sum += a;
    return sum;
  }

  friend bool operator==(const CohortLedger&, const CohortLedger&) = default;
};

/// Renovation and lifetime assumptions for one cell under one scenario.
class ScenarioSpec {
 public:
  ScenarioSpec(ScenarioId id, RenovationSchedule schedule, LifetimeParams lifetime,
               ClampMode clamp_mode = ClampMode::RetireOldest)
      : id_(std::move(id)),
        schedule_(std::move(schedule)),
        lifetime_(std::move(lifetime)),
        clamp_mode_(clamp_mode) {
    schedule_.scenario = id_;
    if (auto problem = check_lifetime(lifetime_))
      throw Error(ErrorKind::RangeError, *problem);
    for (const auto& [y, r] : schedule_.rates) {
      if (auto problem = check_rate(r))
        throw Error(ErrorKind::RangeError, "year " + std::to_string(y) + ": " + *problem);
      if (id_.is_no_renovation() && r != 0)
        throw Error(ErrorKind::RangeError,
                    "scenario NR must have zero renovation rate (year " + std::to_string(y) + ")");
    }
  }

  /// Zero-renovation spec for the given lifetime.
  static ScenarioSpec no_renovation(LifetimeParams lifetime,
                                    ClampMode clamp_mode = ClampMode::RetireOldest) {
    return ScenarioSpec(ScenarioId::no_renovation(), RenovationSchedule{}, std::move(lifetime),
                        clamp_mode);
  }

  const ScenarioId& id() const noexcept { return id_; }
  const RenovationSchedule& schedule() const noexcept { return schedule_; }
  const LifetimeParams& lifetime() const noexcept { return lifetime_; }
  ClampMode clamp_mode() const noexcept { return clamp_mode_; }

  /// Step-hold rate; zero before the first defined year.
  double rate(Year t) const { return schedule_.rate_at(t).value_or(0.0); }

  SurvivalCurve original_curve() const {
    return {lifetime_.mean_lifetime, lifetime_.shape};
  }
  SurvivalCurve renovated_curve() const {
    return {lifetime_.mean_lifetime + lifetime_.renovation_extension, lifetime_.shape};
  }

  /// Same assumptions with every rate raised by delta (capped at 1). The
  /// result is a distinct user scenario even when raising NR.
  ScenarioSpec raised(double delta) const {
    if (delta == 0) return *this;
    RenovationSchedule s = schedule_;
    if (s.rates.empty()) s.rates[std::numeric_limits<Year>::min()] = 0.0;
    for (auto& [y, r] : s.rates) r = std::min(1.0, r + delta);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+g", delta);
    return ScenarioSpec(ScenarioId(id_.name() + buf), std::move(s), lifetime_, clamp_mode_);
  }

 private:
  ScenarioId id_;
  RenovationSchedule schedule_;
  LifetimeParams lifetime_;
  ClampMode clamp_mode_;
};

/// nr_stock - (cumulative_rb - cumulative_drb); throws StockUnderflow if the
/// result would be negative.
inline FloorArea scenario_stock(FloorArea nr_stock, FloorArea cumulative_rb,
                                FloorArea cumulative_drb) {
  const FloorArea bs = nr_stock - (cumulative_rb - cumulative_drb);
  if (bs < 0)
    throw Error(ErrorKind::StockUnderflow,
                "scenario stock would be negative: nr=" + std::to_string(nr_stock) +
                    " cumulative_rb=" + std::to_string(cumulative_rb) +
                    " cumulative_drb=" + std::to_string(cumulative_drb));
  return bs;
}

namespace detail {

// Applies the annual hazard to every cohort keyed by a year before t and
// returns the demolished total.
inline FloorArea demolish(std::map<Year, FloorArea>& cohorts, const SurvivalCurve& curve, Year t) {
  FloorArea total = 0;
  for (auto& [origin, area] : cohorts) {
    if (origin >= t) continue;
    const FloorArea d = area * curve.annual_hazard(static_cast<double>(t - origin));
    area -= d;
    total += d;
  }
  return total;
}

// Removes up to `remaining` from the oldest cohorts first.
inline void retire_oldest(std::map<Year, FloorArea>& cohorts, FloorArea& remaining) {
  for (auto& [origin, area] : cohorts) {
    if (remaining <= 0) return;
    const FloorArea take = std::min(area, remaining);
    area -= take;
    remaining -= take;
  }
}

inline void purge(std::map<Year, FloorArea>& cohorts) {
  std::erase_if(cohorts, [](const auto& kv) { return kv.second < kPurgeThreshold; });
}

inline void check_non_negative(const std::map<Year, FloorArea>& cohorts, const char* which,
                               Year t) {
  for (const auto& [origin, area] : cohorts)
    if (!(area >= 0) || !std::isfinite(area))
      throw Error(ErrorKind::LedgerCorrupt, std::string(which) + " cohort " +
                                                std::to_string(origin) + " has area " +
                                                std::to_string(area) + " after year " +
                                                std::to_string(t));
}

}  // namespace detail

/// Ledger at the end of the horizon start year, holding the no-renovation
/// stock of that year.
///
/// UniformPrehistory spreads construction evenly over the mean-lifetime
/// years before the start year and ages each cohort by the survival curve,
/// then rescales to the start-year stock. SingleCohort puts everything into
/// one cohort built in the start year.
inline CohortLedger seed_ledger(const ScenarioSpec& spec, const NrTrajectory& nr,
                                InitialAgeStructure mode) {
  const Year start = nr.horizon.start_year;
  const FloorArea stock = nr.at(start);
  CohortLedger ledger;
  if (mode == InitialAgeStructure::SingleCohort) {
    if (stock > 0) ledger.original[start] = stock;
    return ledger;
  }
  const auto curve = spec.original_curve();
  const int span = std::max(1, static_cast<int>(std::lround(spec.lifetime().mean_lifetime)));
  std::vector<double> weights(span);
  double sum = 0;
  for (int age = 1; age <= span; ++age) sum += weights[age - 1] = curve.survival(age);
  for (int age = 1; age <= span; ++age) {
    const FloorArea area = stock * weights[age - 1] / sum;
    if (area >= kPurgeThreshold) ledger.original[start - age] = area;
  }
  return ledger;
}

/// Record for the horizon start year: the seeded stock, with no flows.
inline FlowRecord seed_record(const ScenarioSpec& spec, const NrTrajectory& nr) {
  FlowRecord r;
  r.scenario = spec.id();
  r.economy = nr.economy;
  r.btype = nr.btype;
  r.year = nr.horizon.start_year;
  r.bs = r.bs_nr = r.bs_nr_prev = nr.at(r.year);
  return r;
}

/// Advances the ledger from the end of t-1 to the end of t, in place.
///
/// Order within the year: demolition of original stock, renovation of
/// eligible original stock, demolition of renovated stock, then new
/// construction from the flow balance
///   NB = (BS_nr(t) - BS_nr(t-1)) + DB - RB + DRB.
/// A negative NB is clamped to zero and the shortfall is retired from the
/// oldest cohorts as extra DB, which keeps the balance exact.
inline FlowRecord advance_year(CohortLedger& ledger, const ScenarioSpec& spec,
                               const NrTrajectory& nr, Year t) {
  const double delta = stock_delta(nr, t);
  const double rate = spec.rate(t);
  const double eligibility_age = spec.lifetime().eligibility_age;

  FloorArea db = detail::demolish(ledger.original, spec.original_curve(), t);

  FloorArea rb = 0;
  if (rate > 0) {
    for (auto& [built, area] : ledger.original) {
      if (static_cast<double>(t - built) < eligibility_age) continue;
      const FloorArea moved = rate * area;
      area -= moved;
      rb += moved;
    }
  }

  const FloorArea drb = detail::demolish(ledger.renovated, spec.renovated_curve(), t);
  if (rb > 0) ledger.renovated[t] += rb;

  const double nb_raw = delta + db - rb + drb;
  FloorArea nb = nb_raw;
  if (nb_raw < 0) {
    if (spec.clamp_mode() == ClampMode::Strict)
      throw Error(ErrorKind::NegativeNewConstruction,
                  "new construction would be " + std::to_string(nb_raw) + " in year " +
                      std::to_string(t));
    nb = 0;
    FloorArea remaining = -nb_raw;
    detail::retire_oldest(ledger.original, remaining);
    detail::retire_oldest(ledger.renovated, remaining);
    if (remaining > kIdentityTolerance * std::max(1.0, nr.at(t)))
      throw Error(ErrorKind::StockUnderflow,
                  "cannot retire " + std::to_string(-nb_raw) + " Mm2 in year " +
                      std::to_string(t) + ": only " + std::to_string(-nb_raw - remaining) +
                      " Mm2 standing");
    db += -nb_raw;
  }
  if (nb > 0) ledger.original[t] += nb;

  ledger.cumulative_rb += rb;
  ledger.cumulative_drb += drb;

  FlowRecord r;
  r.scenario = spec.id();
  r.economy = nr.economy;
  r.btype = nr.btype;
  r.year = t;
  r.nb = nb;
  r.db = db;
  r.rb = rb;
  r.drb = drb;
  r.bs_nr = nr.at(t);
  r.bs_nr_prev = nr.at(t - 1);
  r.nb_unclamped = nb_raw;
  try {
    r.bs = scenario_stock(r.bs_nr, ledger.cumulative_rb, ledger.cumulative_drb);
  } catch (const Error& e) {
    throw Error(e.kind(), "year " + std::to_string(t) + ": " + e.detail());
  }

  detail::purge(ledger.original);
  detail::purge(ledger.renovated);
  detail::check_non_negative(ledger.original, "original", t);
  detail::check_non_negative(ledger.renovated, "renovated", t);
  return r;
}

/// Value-semantics form of advance_year.
inline std::pair<FlowRecord, CohortLedger> step_year(CohortLedger ledger, const ScenarioSpec& spec,
                                                     const NrTrajectory& nr, Year t) {
  FlowRecord r = advance_year(ledger, spec, nr, t);
  return {std::move(r), std::move(ledger)};
}

/// Every record of one cell, start year through end year.
inline std::vector<FlowRecord> simulate_cell(const ScenarioSpec& spec, const NrTrajectory& nr,
                                             InitialAgeStructure initial_age) {
  const Horizon& h = nr.horizon;
  std::vector<FlowRecord> out;
  out.reserve(h.size());
  CohortLedger ledger = seed_ledger(spec, nr, initial_age);
  out.push_back(seed_record(spec, nr));
  for (Year t = h.start_year + 1; t <= h.end_year; ++t) out.push_back(advance_year(ledger, spec, nr, t));
  return out;
}

/// Scenario spec for one cell built from the dataset's schedule.
inline ScenarioSpec spec_for(const Dataset& dataset, const ScenarioId& scenario, const Cell& cell) {
  RenovationSchedule schedule{scenario, cell.economy, cell.btype, {}};
  if (!scenario.is_no_renovation()) {
    const auto dense = dataset.rates(scenario, cell);
    const Horizon& h = dataset.horizon();
    for (Year y = h.start_year; y <= h.end_year; ++y) schedule.rates[y] = dense[h.index(y)];
  }
  return ScenarioSpec(scenario, std::move(schedule), dataset.lifetime(cell),
                      dataset.options().clamp_mode);
}

/// One FlowRecord per (cell, year) for the scenario, ordered by economy,
/// building type and year. rate_uplift raises every rate uniformly.
inline std::vector<FlowRecord> run_scenario(const Dataset& dataset, const ScenarioId& scenario,
                                            double rate_uplift = 0.0, unsigned threads = 1) {
  const auto& cells = dataset.cells();
  std::vector<std::vector<FlowRecord>> per_cell(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const Cell& cell = cells[i];
    try {
      ScenarioSpec spec = spec_for(dataset, scenario, cell).raised(rate_uplift);
      per_cell[i] = simulate_cell(spec, project_nr(dataset, cell), dataset.options().initial_age);
    } catch (const Error& e) {
      throw Error(e.kind(), "scenario " + scenario.name() + ", cell " + describe(cell) + ": " +
                                e.detail());
    }
  });
  std::vector<FlowRecord> out;
  out.reserve(cells.size() * static_cast<std::size_t>(dataset.horizon().size()));
  for (auto& v : per_cell) out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// Records of every configured scenario, sorted by scenario name, economy,
/// building type and year.
inline std::vector<FlowRecord> run_all(const Dataset& dataset, unsigned threads = 1) {
  std::vector<ScenarioId> scenarios = dataset.scenarios();
  std::sort(scenarios.begin(), scenarios.end());
  std::vector<FlowRecord> out;
  for (const auto& s : scenarios) {
    auto records = run_scenario(dataset, s, 0.0, threads);
    out.insert(out.end(), records.begin(), records.end());
  }
  return out;
}

}  // namespace globus
