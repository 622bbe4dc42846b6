#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "globus/error.hpp"

namespace globus {

/// Calendar year.
using Year = int;

/// Floorspace in million square metres (Mm²). Stocks are end-of-year
/// snapshots, flows are within-year totals.
using FloorArea = double;

/// Relative tolerance used for every accounting identity in the engine.
inline constexpr double kIdentityTolerance = 1e-9;

/// |a - b| <= tol * scale, where scale is at least 1 ULP-relevant magnitude.
inline bool close_relative(double a, double b, double scale, double tol = kIdentityTolerance) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), std::abs(scale)});
}

// ---------------------------------------------------------------------------
// BuildingType

enum class BuildingType { Residential, NonResidential };

inline constexpr std::array<BuildingType, 2> kBuildingTypes{BuildingType::Residential,
                                                            BuildingType::NonResidential};

inline constexpr std::string_view to_string(BuildingType t) {
  return t == BuildingType::Residential ? "residential" : "non_residential";
}

inline std::optional<BuildingType> parse_building_type(std::string_view s) {
  if (s == "residential") return BuildingType::Residential;
  if (s == "non_residential") return BuildingType::NonResidential;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// EconomyId

/// Economy identifier. Codes are short ASCII tokens without whitespace and
/// are the identity; display_name is informational only.
struct EconomyId {
  std::string code;
  std::string display_name;

  EconomyId() = default;
  explicit EconomyId(std::string c, std::string name = {})
      : code(std::move(c)), display_name(std::move(name)) {
    if (!is_valid_code(code))
      throw Error(ErrorKind::SchemaError, "invalid economy code '" + code + "'");
    if (display_name.empty()) display_name = code;
  }

  static bool is_valid_code(std::string_view c) {
    if (c.empty()) return false;
    return std::all_of(c.begin(), c.end(), [](char ch) {
      auto u = static_cast<unsigned char>(ch);
      return u > 0x20 && u < 0x7f && ch != ',' && ch != '"';
    });
  }

  friend bool operator==(const EconomyId& a, const EconomyId& b) { return a.code == b.code; }
  friend auto operator<=>(const EconomyId& a, const EconomyId& b) { return a.code <=> b.code; }
};

// ---------------------------------------------------------------------------
// ScenarioId

/// Scenario name. "NR" is reserved and always means zero renovation.
class ScenarioId {
 public:
  static constexpr std::string_view kNoRenovation = "NR";

  ScenarioId() : name_(kNoRenovation) {}
  explicit ScenarioId(std::string name) : name_(std::move(name)) {
    if (!EconomyId::is_valid_code(name_))
      throw Error(ErrorKind::SchemaError, "invalid scenario name '" + name_ + "'");
  }

  static ScenarioId no_renovation() { return ScenarioId{}; }

  const std::string& name() const noexcept { return name_; }
  bool is_no_renovation() const noexcept { return name_ == kNoRenovation; }

  friend bool operator==(const ScenarioId&, const ScenarioId&) = default;
  friend auto operator<=>(const ScenarioId&, const ScenarioId&) = default;

 private:
  std::string name_;
};

// ---------------------------------------------------------------------------
// Horizon

struct Horizon {
  Year start_year = 2000;
  Year end_year = 2070;

  bool contains(Year y) const noexcept { return y >= start_year && y <= end_year; }
  int size() const noexcept { return end_year - start_year + 1; }
  std::size_t index(Year y) const noexcept { return static_cast<std::size_t>(y - start_year); }

  friend bool operator==(const Horizon&, const Horizon&) = default;
};

// ---------------------------------------------------------------------------
// FlowRecord

/// One simulated year for one (scenario, economy, building type) cell.
struct FlowRecord {
  ScenarioId scenario;
  EconomyId economy;
  BuildingType btype = BuildingType::Residential;
  Year year = 0;
  FloorArea bs = 0;           // scenario stock, end of year
  FloorArea nb = 0;           // new construction
  FloorArea db = 0;           // demolition of original stock (includes clamp surplus)
  FloorArea rb = 0;           // renovation
  FloorArea drb = 0;          // demolition of renovated stock
  FloorArea bs_nr = 0;        // no-renovation stock this year
  FloorArea bs_nr_prev = 0;   // no-renovation stock the year before
  FloorArea nb_unclamped = 0; // new construction before the non-negativity clamp
};

/// Checks every FlowRecord invariant. Returns an empty list iff all hold.
inline std::vector<std::string> validate_record(const FlowRecord& r) {
  std::vector<std::string> out;
  const std::array<std::pair<const char*, double>, 7> fields{{{"bs", r.bs},
                                                              {"nb", r.nb},
                                                              {"db", r.db},
                                                              {"rb", r.rb},
                                                              {"drb", r.drb},
                                                              {"bs_nr", r.bs_nr},
                                                              {"bs_nr_prev", r.bs_nr_prev}}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value))
      out.push_back(std::string(name) + " must be finite");
    else if (value < 0)
      out.push_back(std::string(name) + " must be non-negative");
  }

  const double lhs = r.nb - r.db + r.rb - r.drb;
  const double rhs = r.bs_nr - r.bs_nr_prev;
  const double scale = std::max({r.nb, r.db, r.rb, r.drb, r.bs_nr, r.bs_nr_prev});
  if (!close_relative(lhs, rhs, scale)) {
    out.push_back("flow balance violated: nb - db + rb - drb = " + std::to_string(lhs) +
                  " but bs_nr - bs_nr_prev = " + std::to_string(rhs));
  }

  if (r.scenario.is_no_renovation()) {
    if (r.rb != 0) out.push_back("NR scenario must have rb=0");
    if (r.drb != 0) out.push_back("NR scenario must have drb=0");
    if (r.bs != r.bs_nr) out.push_back("NR scenario must have bs=bs_nr");
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON encoding

inline void to_json(nlohmann::json& j, BuildingType t) { j = std::string(to_string(t)); }
inline void from_json(const nlohmann::json& j, BuildingType& t) {
  auto parsed = parse_building_type(j.get<std::string>());
  if (!parsed) throw Error(ErrorKind::SchemaError, "unknown building type " + j.dump());
  t = *parsed;
}

inline void to_json(nlohmann::json& j, const EconomyId& e) {
  j = {{"code", e.code}, {"display_name", e.display_name}};
}
inline void from_json(const nlohmann::json& j, EconomyId& e) {
  e = EconomyId(j.at("code").get<std::string>(), j.value("display_name", std::string{}));
}

inline void to_json(nlohmann::json& j, const ScenarioId& s) { j = s.name(); }
inline void from_json(const nlohmann::json& j, ScenarioId& s) {
  s = ScenarioId(j.get<std::string>());
}

inline void to_json(nlohmann::json& j, const Horizon& h) {
  j = {{"start_year", h.start_year}, {"end_year", h.end_year}};
}
inline void from_json(const nlohmann::json& j, Horizon& h) {
  h.start_year = j.at("start_year").get<Year>();
  h.end_year = j.at("end_year").get<Year>();
}

inline void to_json(nlohmann::json& j, const FlowRecord& r) {
  j = {{"scenario", r.scenario}, {"economy", r.economy}, {"building_type", r.btype},
       {"year", r.year},         {"bs", r.bs},           {"nb", r.nb},
       {"db", r.db},             {"rb", r.rb},           {"drb", r.drb},
       {"bs_nr", r.bs_nr},       {"bs_nr_prev", r.bs_nr_prev},
       {"nb_unclamped", r.nb_unclamped}};
}
inline void from_json(const nlohmann::json& j, FlowRecord& r) {
  r.scenario = j.at("scenario").get<ScenarioId>();
  r.economy = j.at("economy").get<EconomyId>();
  r.btype = j.at("building_type").get<BuildingType>();
  r.year = j.at("year").get<Year>();
  r.bs = j.at("bs").get<double>();
  r.nb = j.at("nb").get<double>();
  r.db = j.at("db").get<double>();
  r.rb = j.at("rb").get<double>();
  r.drb = j.at("drb").get<double>();
  r.bs_nr = j.at("bs_nr").get<double>();
  r.bs_nr_prev = j.at("bs_nr_prev").get<double>();
  r.nb_unclamped = j.at("nb_unclamped").get<double>();
}

}  // namespace globus
