#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "globus/csv.hpp"
#include "globus/dataset.hpp"
#include "globus/domain.hpp"
#include "globus/error.hpp"

namespace globus {

/// Where a run's inputs live, plus the parsed inputs themselves.
struct RunConfig {
  std::filesystem::path config_path;
  std::string config_text;
  DatasetInputs inputs;
  /// (role, path) of every CSV the config references and that exists, in
  /// a fixed role order.
  std::vector<std::pair<std::string, std::filesystem::path>> input_files;
  /// False when the config itself could not be read far enough to know
  /// which inputs exist.
  bool complete = false;
};

namespace detail {

inline const std::vector<std::string_view> kPopulationColumns{"economy", "year",
                                                              "population_persons"};
inline const std::vector<std::string_view> kPerCapitaColumns{"economy", "building_type", "year",
                                                             "m2_per_capita"};
inline const std::vector<std::string_view> kLifetimeColumns{
    "economy",           "building_type", "mean_lifetime_years", "weibull_shape",
    "renovation_extension_years", "eligibility_age_years"};
inline const std::vector<std::string_view> kScheduleColumns{"scenario", "economy",
                                                            "building_type", "year",
                                                            "renovation_rate"};
inline const std::vector<std::string_view> kEmissionColumns{"economy", "building_type", "year",
                                                            "mtco2"};

// Typed field access for one row; records a SchemaError and returns
// nullopt on failure.
class RowReader {
 public:
  RowReader(const csv::Table& table, const csv::Row& row, std::vector<Diagnostic>& diags)
      : table_(table), row_(row), diags_(diags) {}

  std::string where() const { return table_.where(row_.line); }

  const std::string& text(std::string_view col) const {
    return row_.fields[table_.column(col)];
  }

  std::optional<double> number(std::string_view col) {
    auto v = csv::parse_double(text(col));
    if (!v) schema("column " + std::string(col) + ": '" + text(col) + "' is not a number");
    return v;
  }

  std::optional<int> year() {
    auto v = csv::parse_int(text("year"));
    if (!v) schema("column year: '" + text("year") + "' is not an integer year");
    return v;
  }

  std::optional<EconomyId> economy(const std::set<std::string>& known) {
    const auto& code = text("economy");
    if (!known.contains(code)) {
      schema("unknown economy '" + code + "'");
      return std::nullopt;
    }
    return EconomyId(code);
  }

  std::optional<BuildingType> btype() {
    auto b = parse_building_type(text("building_type"));
    if (!b) schema("unknown building_type '" + text("building_type") + "'");
    return b;
  }

  std::optional<ScenarioId> scenario() {
    const auto& name = text("scenario");
    if (!EconomyId::is_valid_code(name)) {
      schema("invalid scenario name '" + name + "'");
      return std::nullopt;
    }
    return ScenarioId(name);
  }

  void schema(const std::string& msg) { diags_.push_back({ErrorKind::SchemaError, where() + ": " + msg}); }
  void range(const std::string& msg) { diags_.push_back({ErrorKind::RangeError, where() + ": " + msg}); }

 private:
  const csv::Table& table_;
  const csv::Row& row_;
  std::vector<Diagnostic>& diags_;
};

template <typename T>
T enum_option(const nlohmann::json& options, const char* key,
              const std::vector<std::pair<std::string, T>>& values, T fallback,
              std::vector<Diagnostic>& diags, const std::string& source) {
  if (!options.contains(key)) return fallback;
  const auto& v = options.at(key);
  if (v.is_string())
    for (const auto& [name, e] : values)
      if (v.get<std::string>() == name) return e;
  std::string allowed;
  for (const auto& [name, e] : values) allowed += (allowed.empty() ? "" : ", ") + name;
  diags.push_back({ErrorKind::SchemaError,
                   source + ": options." + key + " must be one of " + allowed + " (got " +
                       v.dump() + ")"});
  return fallback;
}

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                                const std::string& context, std::vector<Diagnostic>& diags) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key))
      diags.push_back({ErrorKind::SchemaError, context + ": unknown key '" + key + "'"});
}

}  // namespace detail

/// Reads the JSON run configuration and every CSV it references. Problems
/// are collected, not thrown; the caller decides.
inline RunConfig read_run_config(const std::filesystem::path& config_path,
                                 std::vector<Diagnostic>& diags) {
  namespace fs = std::filesystem;
  using nlohmann::json;
  RunConfig rc;
  rc.config_path = config_path;
  const std::string src = config_path.string();

  auto text = csv::read_file(config_path);
  if (!text) {
    diags.push_back({ErrorKind::MissingFile, src + ": cannot open config file"});
    return rc;
  }
  rc.config_text = *text;

  json cfg;
  try {
    cfg = json::parse(*text);
  } catch (const json::parse_error& e) {
    diags.push_back({ErrorKind::SchemaError, src + ": invalid JSON: " + e.what()});
    return rc;
  }
  if (!cfg.is_object()) {
    diags.push_back({ErrorKind::SchemaError, src + ": top level must be an object"});
    return rc;
  }
  detail::reject_unknown_keys(cfg, {"horizon", "economies", "scenarios", "files", "groups", "options"},
                              src, diags);

  DatasetInputs& in = rc.inputs;
  try {
    if (cfg.contains("horizon")) {
      const auto& h = cfg.at("horizon");
      detail::reject_unknown_keys(h, {"start_year", "end_year"}, src + ": horizon", diags);
      in.horizon.start_year = h.value("start_year", in.horizon.start_year);
      in.horizon.end_year = h.value("end_year", in.horizon.end_year);
    }
    if (!cfg.contains("economies") || !cfg.at("economies").is_array()) {
      diags.push_back({ErrorKind::SchemaError, src + ": 'economies' array is required"});
    } else {
      for (const auto& e : cfg.at("economies")) {
        try {
          if (e.is_string())
            in.economies.emplace_back(e.get<std::string>());
          else
            in.economies.push_back(e.get<EconomyId>());
        } catch (const Error& err) {
          diags.push_back({ErrorKind::SchemaError, src + ": economies: " + err.detail()});
        }
      }
    }
    if (cfg.contains("scenarios")) {
      for (const auto& s : cfg.at("scenarios")) {
        try {
          in.scenarios.push_back(s.get<ScenarioId>());
        } catch (const Error& err) {
          diags.push_back({ErrorKind::SchemaError, src + ": scenarios: " + err.detail()});
        }
      }
    } else {
      in.scenarios = {ScenarioId("NR"), ScenarioId("BAU"), ScenarioId("TEP")};
    }
    if (cfg.contains("groups"))
      in.groups = cfg.at("groups").get<std::map<std::string, std::vector<std::string>>>();

    if (cfg.contains("options")) {
      const auto& o = cfg.at("options");
      detail::reject_unknown_keys(o,
                                  {"clamp_mode", "easing", "initial_age_structure", "output_dir",
                                   "base_year", "sensitivity_base_scenario"},
                                  src + ": options", diags);
      auto& opt = in.options;
      opt.clamp_mode = detail::enum_option<ClampMode>(
          o, "clamp_mode", {{"retire_oldest", ClampMode::RetireOldest}, {"strict", ClampMode::Strict}},
          opt.clamp_mode, diags, src);
      opt.easing = detail::enum_option<Easing>(
          o, "easing", {{"linear", Easing::Linear}, {"logistic", Easing::Logistic}}, opt.easing,
          diags, src);
      opt.initial_age = detail::enum_option<InitialAgeStructure>(
          o, "initial_age_structure",
          {{"uniform_prehistory", InitialAgeStructure::UniformPrehistory},
           {"single_cohort", InitialAgeStructure::SingleCohort}},
          opt.initial_age, diags, src);
      opt.output_dir = o.value("output_dir", opt.output_dir);
      opt.base_year = o.value("base_year", opt.base_year);
      opt.sensitivity_base = o.value("sensitivity_base_scenario", opt.sensitivity_base);
    }
  } catch (const json::exception& e) {
    diags.push_back({ErrorKind::SchemaError, src + ": " + e.what()});
  }

  // Referenced CSV files.
  const fs::path base = config_path.parent_path();
  std::map<std::string, fs::path> paths;
  if (!cfg.contains("files") || !cfg.at("files").is_object()) {
    diags.push_back({ErrorKind::SchemaError, src + ": 'files' object is required"});
    return rc;
  }
  const auto& files = cfg.at("files");
  detail::reject_unknown_keys(files,
                              {"population", "per_capita_floorspace", "lifetime_params",
                               "renovation_schedule", "emissions"},
                              src + ": files", diags);
  for (const char* role : {"population", "per_capita_floorspace", "lifetime_params",
                           "renovation_schedule", "emissions"}) {
    if (!files.contains(role)) {
      if (std::string_view(role) != "emissions")
        diags.push_back({ErrorKind::SchemaError, src + ": files." + role + " is required"});
      continue;
    }
    if (!files.at(role).is_string()) {
      diags.push_back({ErrorKind::SchemaError, src + ": files." + role + " must be a path string"});
      continue;
    }
    paths[role] = base / files.at(role).get<std::string>();
  }

  std::set<std::string> known;
  for (const auto& e : in.economies) known.insert(e.code);

  auto load = [&](const char* role, const std::vector<std::string_view>& columns)
      -> std::optional<csv::Table> {
    auto it = paths.find(role);
    if (it == paths.end()) return std::nullopt;
    auto body = csv::read_file(it->second);
    if (!body) {
      diags.push_back({ErrorKind::MissingFile, it->second.string() + ": cannot open " + role + " file"});
      return std::nullopt;
    }
    rc.input_files.emplace_back(role, it->second);
    auto table = csv::parse(*body, it->second.string(), columns, diags);
    if (!table.header_ok) return std::nullopt;
    return table;
  };

  if (auto t = load("population", detail::kPopulationColumns)) {
    std::map<std::string, PopulationSeries> series;
    for (const auto& row : t->rows) {
      detail::RowReader r(*t, row, diags);
      auto e = r.economy(known);
      auto y = r.year();
      auto v = r.number("population_persons");
      if (!e || !y || !v) continue;
      if (!(std::isfinite(*v) && *v > 0)) {
        r.range("population_persons must be > 0 (got " + r.text("population_persons") + ")");
        continue;
      }
      auto& s = series[e->code];
      s.economy = *e;
      if (!s.values.emplace(*y, *v).second)
        r.schema("duplicate population row for " + e->code + " " + std::to_string(*y));
    }
    for (auto& [code, s] : series) in.population.push_back(std::move(s));
  }

  if (auto t = load("per_capita_floorspace", detail::kPerCapitaColumns)) {
    std::map<std::pair<std::string, int>, std::map<Year, double>> anchors;
    for (const auto& row : t->rows) {
      detail::RowReader r(*t, row, diags);
      auto e = r.economy(known);
      auto b = r.btype();
      auto y = r.year();
      auto v = r.number("m2_per_capita");
      if (!e || !b || !y || !v) continue;
      if (!(std::isfinite(*v) && *v > 0)) {
        r.range("m2_per_capita must be > 0 (got " + r.text("m2_per_capita") + ")");
        continue;
      }
      if (!anchors[{e->code, static_cast<int>(*b)}].emplace(*y, *v).second)
        r.schema("duplicate per-capita anchor for " + e->code + "/" +
                 std::string(to_string(*b)) + " " + std::to_string(*y));
    }
    for (auto& [key, values] : anchors) {
      PerCapitaAnchors a{EconomyId(key.first), static_cast<BuildingType>(key.second), {}};
      a.anchors.assign(values.begin(), values.end());
      in.per_capita.push_back(std::move(a));
    }
  }

  if (auto t = load("lifetime_params", detail::kLifetimeColumns)) {
    for (const auto& row : t->rows) {
      detail::RowReader r(*t, row, diags);
      auto e = r.economy(known);
      auto b = r.btype();
      auto mean = r.number("mean_lifetime_years");
      auto shape = r.number("weibull_shape");
      auto ext = r.number("renovation_extension_years");
      auto elig = r.number("eligibility_age_years");
      if (!e || !b || !mean || !shape || !ext || !elig) continue;
      LifetimeParams p{*e, *b, *mean, *shape, *ext, *elig};
      if (auto problem = check_lifetime(p)) {
        r.range(*problem);
        continue;
      }
      bool duplicate = false;
      for (const auto& q : in.lifetimes) duplicate |= q.economy == p.economy && q.btype == p.btype;
      if (duplicate) {
        r.schema("duplicate lifetime parameters for " + e->code + "/" + std::string(to_string(*b)));
        continue;
      }
      in.lifetimes.push_back(p);
    }
  }

  if (auto t = load("renovation_schedule", detail::kScheduleColumns)) {
    std::map<std::tuple<std::string, std::string, int>, RenovationSchedule> schedules;
    for (const auto& row : t->rows) {
      detail::RowReader r(*t, row, diags);
      auto s = r.scenario();
      auto e = r.economy(known);
      auto b = r.btype();
      auto y = r.year();
      auto v = r.number("renovation_rate");
      if (!s || !e || !b || !y || !v) continue;
      if (auto problem = check_rate(*v)) {
        r.range(*problem);
        continue;
      }
      if (s->is_no_renovation() && *v != 0) {
        r.range("scenario NR must have renovation_rate 0 (got " + r.text("renovation_rate") + ")");
        continue;
      }
      auto& sched = schedules[{s->name(), e->code, static_cast<int>(*b)}];
      sched.scenario = *s;
      sched.economy = *e;
      sched.btype = *b;
      if (!sched.rates.emplace(*y, *v).second)
        r.schema("duplicate renovation rate for " + s->name() + "/" + e->code + "/" +
                 std::string(to_string(*b)) + " " + std::to_string(*y));
    }
    for (auto& [key, s] : schedules) in.schedules.push_back(std::move(s));
  }

  if (auto t = load("emissions", detail::kEmissionColumns)) {
    std::map<std::pair<std::string, int>, EmissionSeries> series;
    for (const auto& row : t->rows) {
      detail::RowReader r(*t, row, diags);
      auto e = r.economy(known);
      auto b = r.btype();
      auto y = r.year();
      auto v = r.number("mtco2");
      if (!e || !b || !y || !v) continue;
      if (!(std::isfinite(*v) && *v >= 0)) {
        r.range("mtco2 must be >= 0 (got " + r.text("mtco2") + ")");
        continue;
      }
      auto& s = series[{e->code, static_cast<int>(*b)}];
      s.economy = *e;
      s.btype = *b;
      if (!s.values.emplace(*y, *v).second)
        r.schema("duplicate emissions row for " + e->code + "/" + std::string(to_string(*b)) +
                 " " + std::to_string(*y));
    }
    for (auto& [key, s] : series) in.emissions.push_back(std::move(s));
  }
  rc.complete = true;
  return rc;
}

/// Loads and validates everything a config references. Throws DatasetError
/// listing every problem (file:line where applicable).
inline Dataset load_dataset(const RunConfig& rc, std::vector<Diagnostic> diags = {}) {
  if (!rc.complete) {
    if (diags.empty()) diags.push_back({ErrorKind::SchemaError, "configuration was not read"});
    throw DatasetError(std::move(diags));
  }
  std::optional<Dataset> d;
  try {
    d = build_dataset(rc.inputs);
  } catch (const DatasetError& e) {
    diags.insert(diags.end(), e.diagnostics().begin(), e.diagnostics().end());
  }
  if (!diags.empty()) throw DatasetError(std::move(diags));
  return std::move(*d);
}

inline Dataset load_dataset(const std::filesystem::path& config_path) {
  std::vector<Diagnostic> diags;
  RunConfig rc = read_run_config(config_path, diags);
  return load_dataset(rc, std::move(diags));
}

}  // namespace globus
