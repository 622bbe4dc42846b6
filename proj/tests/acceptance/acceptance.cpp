// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "globus/cli.hpp"
#include "globus/globus.hpp"
#include "globus_oracle/oracle.hpp"
#include "globus_test/fixtures.hpp"
#include "globus_test/random_dataset.hpp"

using namespace globus;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Dataset> identity_corpus() {
  std::vector<Dataset> out;
  out.push_back(load_dataset(globus::testing::global_config()));
  out.push_back(load_dataset(globus::testing::toy_config()));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) out.push_back(globus::testing::random_dataset(seed));
  return out;
}

std::string where(const FlowRecord& r) {
  return r.scenario.name() + " " + r.economy.code + "/" + std::string(to_string(r.btype)) + " " +
         std::to_string(r.year);
}

// Criteria 1 and 2 share the corpus and the runs.
std::pair<Outcome, Outcome> identities() {
  const auto t0 = Clock::now();
  const auto corpus = identity_corpus();
  std::size_t records = 0, bad_flow = 0, bad_stock = 0;
  std::string first_flow, first_stock;
  for (const auto& d : corpus) {
    for (const auto& s : d.scenarios()) {
      std::map<std::pair<std::string, BuildingType>, std::pair<double, double>> cum;
      for (const auto& r : run_scenario(d, s)) {
        ++records;
        const double delta = r.bs_nr - r.bs_nr_prev;
        const double scale = std::max({std::abs(r.bs_nr), std::abs(r.bs_nr_prev), r.nb, r.db, r.rb, r.drb});
        if (!close_relative(r.nb - r.db + r.rb - r.drb, delta, scale)) {
          if (!bad_flow++) first_flow = where(r);
        }
        auto& [crb, cdrb] = cum[{r.economy.code, r.btype}];
        crb += r.rb;
        cdrb += r.drb;
        if (!close_relative(r.bs, r.bs_nr - (crb - cdrb), std::max({r.bs_nr, r.bs, crb}))) {
          if (!bad_stock++) first_stock = where(r);
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu records from %zu datasets, %.2f s", records, corpus.size(), secs);
  Outcome flow{bad_flow == 0 && secs < 10.0, buf};
  if (bad_flow) flow.detail += ", " + std::to_string(bad_flow) + " violations, first at " + first_flow;
  if (secs >= 10.0) flow.detail += " (limit 10 s)";
  Outcome stock{bad_stock == 0, std::string(buf)};
  if (bad_stock) stock.detail += ", " + std::to_string(bad_stock) + " violations, first at " + first_stock;
  return {flow, stock};
}

Outcome nr_degeneracy() {
  std::size_t checked = 0;
  for (const auto& cfg : {globus::testing::global_config(), globus::testing::toy_config()}) {
    const Dataset d = load_dataset(cfg);
    const auto recs = run_scenario(d, ScenarioId::no_renovation());
    std::size_t i = 0;
    for (const auto& c : d.cells()) {
      const auto nr = project_nr(d, c);
      for (double v : nr.stock) {
        if (format_number(recs[i].bs) != format_number(v))
          return {false, "bs differs at " + where(recs[i])};
        ++i;
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " cell-years on 2 fixtures"};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::vector<Dataset> sets;
  sets.push_back(load_dataset(globus::testing::toy_config()));
  for (std::uint64_t seed = 0; seed < 24; ++seed) sets.push_back(globus::testing::random_dataset(seed));
  double worst = 0;
  std::size_t flows = 0;
  for (const auto& d : sets) {
    for (const auto& s : d.scenarios()) {
      const auto a = run_scenario(d, s);
      const auto b = oracle::oracle_run(d, s);
      if (a.size() != b.size()) return {false, "record count differs for " + s.name()};
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (auto [x, y] : {std::pair{a[i].bs, b[i].bs}, {a[i].nb, b[i].nb}, {a[i].db, b[i].db},
                            {a[i].rb, b[i].rb}, {a[i].drb, b[i].drb}}) {
          ++flows;
          if (!globus::testing::flows_close(x, y)) return {false, "mismatch at " + where(a[i])};
          const double m = std::max(std::abs(x), std::abs(y));
          if (m > 1e-12) worst = std::max(worst, std::abs(x - y) / m);
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu datasets, %zu flows, worst relative difference %.3g, %.2f s",
                sets.size(), flows, worst, secs);
  return {secs < 30.0, buf};
}

Outcome totals_2070(const Dataset& d) {
  bool ok = true;
  std::ostringstream msg;
  for (auto [code, target] : {std::pair{"IND", 89400.0}, {"AFR", 91900.0}, {"CHN", 81000.0}}) {
    double sum = 0;
    for (auto bt : kBuildingTypes) sum += project_nr(d, d.economy(code), bt).at(2070);
    const double err = sum / target - 1;
    ok = ok && std::abs(err) <= 0.005;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.1f bn m2 (%+.3f%%); ", code, sum / 1000, err * 100);
    msg << buf;
  }
  std::string text = msg.str();
  return {ok, text.substr(0, text.size() - 2)};
}

Outcome carbon(const std::vector<MetricRow>& metrics) {
  auto find = [&](const std::string& code, Metric m) -> std::optional<double> {
    for (const auto& r : metrics)
      if (r.scenario.is_no_renovation() && r.economy == code && r.building_type == "residential" &&
          r.year == 2021 && r.metric == m)
        return r.value;
    return std::nullopt;
  };
  bool ok = true;
  std::ostringstream msg;
  struct Case {
    const char* code;
    double per_m2, per_person;
  };
  for (const auto& c : {Case{"US", 45.2, 2797.3}, Case{"CHN", 14.5, 566.6}, Case{"IND", 18.5, 275.7}}) {
    const auto a = find(c.code, Metric::CarbonPerM2);
    const auto b = find(c.code, Metric::CarbonPerCapita);
    if (!a || !b) return {false, std::string("missing carbon metrics for ") + c.code};
    ok = ok && std::abs(*a / c.per_m2 - 1) <= 0.001 && std::abs(*b / c.per_person - 1) <= 0.001;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.2f kg/m2 %.1f kg/person; ", c.code, *a, *b);
    msg << buf;
  }
  std::string text = msg.str();
  return {ok, text.substr(0, text.size() - 2)};
}

Outcome sweep_monotonicity() {
  globus::testing::TempDir out;
  std::ostringstream o, e;
  const std::vector<double> deltas{0.0, 0.005, 0.01, 0.02};
  const int code = cli::cmd_sweep(globus::testing::global_config(), out.path(), deltas, o, e);
  if (code != cli::kOk) return {false, "sweep exited " + std::to_string(code) + ": " + e.str()};
  std::istringstream in(globus::testing::slurp(out / "sensitivity.csv"));
  std::string line;
  std::getline(in, line);
  std::vector<double> v;
  while (std::getline(in, line)) v.push_back(std::stod(line.substr(line.find(',') + 1)));
  if (v.size() != deltas.size()) return {false, "unexpected sensitivity.csv row count"};
  bool monotone = true;
  for (std::size_t i = 1; i < v.size(); ++i) monotone = monotone && v[i] >= v[i - 1];
  const bool positive = v[2] > 0 && v[3] > 0;
  const bool band = v[2] >= 40 && v[2] <= 400;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "delta 0.01 -> %.6g Mm2/yr (reference 123, band 40-400), 0.02 -> %.6g, %s%s%s", v[2],
                v[3], monotone ? "non-decreasing" : "NOT non-decreasing", positive ? ", positive" : ", NOT positive",
                band ? "" : ", outside band");
  return {monotone && positive && band, buf};
}

Outcome group_bands(const Dataset& d, const std::vector<FlowRecord>& records) {
  const Grouping developing{d.groups().at("developing")};
  const Grouping developed{d.groups().at("developed")};
  const double a = stock_multiple(records, ScenarioId("NR"), 2020, 2070, developing);
  const double b = stock_multiple(records, ScenarioId("NR"), 2020, 2070, developed);
  const double c = stock_multiple(records, ScenarioId("TEP"), 2020, 2070, developed);
  const bool ok = std::abs(a - 2.2) <= 0.3 && std::abs(b - 1.4) <= 0.2 && std::abs(c - 0.8) <= 0.15;
  char buf[200];
  std::snprintf(buf, sizeof buf, "developing NR %.3f (2.2+-0.3), developed NR %.3f (1.4+-0.2), developed TEP %.3f (0.8+-0.15)",
                a, b, c);
  return {ok, buf};
}

// The manifest carries a wall-clock timestamp; everything else must match.
std::string manifest_without_timestamp(const fs::path& p) {
  auto j = nlohmann::json::parse(globus::testing::slurp(p));
  j.erase("timestamp");
  return j.dump();
}

Outcome determinism() {
  globus::testing::TempDir a, b;
  double secs[2];
  const fs::path dirs[2] = {a.path(), b.path()};
  for (int i = 0; i < 2; ++i) {
    std::ostringstream o, e;
    const auto t0 = Clock::now();
    const int code = cli::cmd_run(globus::testing::global_config(), dirs[i], o, e);
    secs[i] = seconds_since(t0);
    if (code != cli::kOk) return {false, "run exited " + std::to_string(code) + ": " + e.str()};
  }
  bool same = true;
  for (const char* f : {"stocks.csv", "metrics.csv"})
    same = same && globus::testing::slurp(a / f) == globus::testing::slurp(b / f);
  same = same && manifest_without_timestamp(a / "manifest.json") == manifest_without_timestamp(b / "manifest.json");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s outputs, runs took %.2f s and %.2f s",
                same ? "byte-identical" : "DIFFERENT", secs[0], secs[1]);
  return {same && secs[0] < 5.0 && secs[1] < 5.0, buf};
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> checks;
  std::pair<Outcome, Outcome> ids;
  bool ids_done = false;
  auto get_ids = [&]() -> std::pair<Outcome, Outcome>& {
    if (!ids_done) {
      ids = identities();
      ids_done = true;
    }
    return ids;
  };

  std::optional<Dataset> global;
  std::vector<FlowRecord> records;
  std::vector<MetricRow> metrics;
  auto ensure_global = [&] {
    if (global) return;
    global = load_dataset(globus::testing::global_config());
    records = run_all(*global);
    metrics = derive_metrics(*global, records);
  };

  checks.emplace_back(1, [&] { return get_ids().first; });
  checks.emplace_back(2, [&] { return get_ids().second; });
  checks.emplace_back(3, nr_degeneracy);
  checks.emplace_back(4, oracle_equivalence);
  checks.emplace_back(5, [&] { ensure_global(); return totals_2070(*global); });
  checks.emplace_back(6, [&] { ensure_global(); return carbon(metrics); });
  checks.emplace_back(7, sweep_monotonicity);
  checks.emplace_back(8, [&] { ensure_global(); return group_bands(*global, records); });
  checks.emplace_back(9, determinism);

  int failed = 0;
  for (auto& [n, fn] : checks) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d: %s - %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
