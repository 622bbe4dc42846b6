#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "globus/domain.hpp"
#include "globus/metrics.hpp"

namespace globus {

/// Six significant digits, round-half-even on the exact binary value, and
/// no negative zero.
inline std::string format_number(double v) {
  if (v == 0) v = 0;  // drops the sign of -0.0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline constexpr const char* kStocksHeader =
    "scenario,economy,building_type,year,bs_mm2,bs_nr_mm2,nb_mm2,db_mm2,rb_mm2,drb_mm2,"
    "nb_unclamped_mm2";
inline constexpr const char* kMetricsHeader = "scenario,economy,building_type,year,metric,value,unit";
inline constexpr const char* kSensitivityHeader = "delta_rate,avg_annual_nb_reduction_mm2";

inline void write_stocks_csv(std::ostream& out, const std::vector<FlowRecord>& records) {
  out << kStocksHeader << '\n';
  for (const auto& r : records) {
    out << r.scenario.name() << ',' << r.economy.code << ',' << to_string(r.btype) << ','
        << r.year << ',' << format_number(r.bs) << ',' << format_number(r.bs_nr) << ','
        << format_number(r.nb) << ',' << format_number(r.db) << ',' << format_number(r.rb) << ','
        << format_number(r.drb) << ',' << format_number(r.nb_unclamped) << '\n';
  }
}

inline void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << kMetricsHeader << '\n';
  for (const auto& m : rows) {
    out << m.scenario.name() << ',' << m.economy << ',' << m.building_type << ',' << m.year << ','
        << m.name() << ',' << format_number(m.value) << ',' << m.unit() << '\n';
  }
}

struct SensitivityRow {
  double delta_rate = 0;
  double avg_annual_nb_reduction = 0;  // Mm²/yr
};

inline void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows) {
  out << kSensitivityHeader << '\n';
  for (const auto& r : rows)
    out << format_number(r.delta_rate) << ',' << format_number(r.avg_annual_nb_reduction) << '\n';
}

}  // namespace globus
