#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "globus/error.hpp"
#include "globus/ingest.hpp"
#include "globus/manifest.hpp"
#include "globus/metrics.hpp"
#include "globus/parallel.hpp"
#include "globus/report.hpp"
#include "globus/turnover.hpp"

namespace globus::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidationFailed = 2,
  kEngineFailed = 3,
};

namespace detail {

struct Loaded {
  RunConfig config;
  Dataset dataset;
};

// Loads the dataset, printing every diagnostic on failure.
inline std::optional<Loaded> load(const std::filesystem::path& config_path, std::ostream& err) {
  std::vector<Diagnostic> diags;
  RunConfig rc = read_run_config(config_path, diags);
  try {
    Dataset d = load_dataset(rc, std::move(diags));
    return Loaded{std::move(rc), std::move(d)};
  } catch (const DatasetError& e) {
    for (const auto& d : e.diagnostics()) err << d.str() << '\n';
    err << "validation failed: " << e.diagnostics().size() << " problem(s)\n";
    return std::nullopt;
  }
}

inline std::filesystem::path resolve_out_dir(const Loaded& l,
                                             const std::optional<std::filesystem::path>& out) {
  if (out) return *out;
  return l.config.config_path.parent_path() / l.dataset.options().output_dir;
}

// Writes a set of files so that either all of them exist afterwards or none
// of the ones named here do.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string contents) {
    files_.emplace_back(name, std::move(contents));
  }

  void commit() {
    namespace fs = std::filesystem;
    fs::create_directories(dir_);
    try {
      for (const auto& [name, contents] : files_) {
        const fs::path tmp = dir_ / (name + ".tmp");
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << contents;
        out.close();
        if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
        fs::rename(tmp, dir_ / name);
      }
    } catch (...) {
      discard();
      throw;
    }
  }

  void discard() noexcept {
    std::error_code ec;
    for (const auto& [name, contents] : files_) {
      std::filesystem::remove(dir_ / name, ec);
      std::filesystem::remove(dir_ / (name + ".tmp"), ec);
    }
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

inline std::string manifest_json(const Loaded& l, const std::string& command) {
  RunManifest m;
  m.config_hash = config_hash(l.config);
  m.timestamp = utc_timestamp();
  for (const auto& s : l.dataset.scenarios()) m.scenarios.push_back(s.name());
  m.cell_count = l.dataset.cells().size();
  m.command = command;
  return nlohmann::json(m).dump(2) + "\n";
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream ss;
  fn(ss);
  return ss.str();
}

}  // namespace detail

/// `globus validate <config>`
inline int cmd_validate(const std::filesystem::path& config_path, std::ostream& out,
                        std::ostream& err) {
  auto loaded = detail::load(config_path, err);
  if (!loaded) return kValidationFailed;
  out << "ok: " << loaded->dataset.economies().size() << " economies, "
      << loaded->dataset.cells().size() << " cells, " << loaded->dataset.horizon().start_year
      << "-" << loaded->dataset.horizon().end_year << ", scenarios";
  for (const auto& s : loaded->dataset.scenarios()) out << ' ' << s.name();
  out << '\n';
  return kOk;
}

/// `globus run <config> --out <dir>`: writes stocks.csv, metrics.csv and
/// manifest.json.
inline int cmd_run(const std::filesystem::path& config_path,
                   const std::optional<std::filesystem::path>& out_dir, std::ostream& out,
                   std::ostream& err) {
  unsigned threads = 1;
  try {
    threads = thread_count_from_env();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kValidationFailed;
  }
  auto loaded = detail::load(config_path, err);
  if (!loaded) return kValidationFailed;
  const auto dir = detail::resolve_out_dir(*loaded, out_dir);
  detail::OutputSet files(dir);
  try {
    const auto records = run_all(loaded->dataset, threads);
    const auto metrics = derive_metrics(loaded->dataset, records);
    files.add("stocks.csv", detail::render([&](std::ostream& o) { write_stocks_csv(o, records); }));
    files.add("metrics.csv", detail::render([&](std::ostream& o) { write_metrics_csv(o, metrics); }));
    files.add("manifest.json", detail::manifest_json(*loaded, "run"));
    files.commit();
    out << "wrote " << records.size() << " flow records and " << metrics.size()
        << " metric rows to " << dir.string() << '\n';
  } catch (const std::exception& e) {
    files.discard();
    err << "engine error: " << e.what() << '\n';
    return kEngineFailed;
  }
  return kOk;
}

/// `globus sweep <config> --out <dir> --deltas 0.01,0.02`: writes
/// sensitivity.csv and manifest.json.
inline int cmd_sweep(const std::filesystem::path& config_path,
                     const std::optional<std::filesystem::path>& out_dir,
                     const std::vector<double>& deltas, std::ostream& out, std::ostream& err) {
  unsigned threads = 1;
  try {
    threads = thread_count_from_env();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kValidationFailed;
  }
  for (double d : deltas) {
    if (!(d >= 0) || !std::isfinite(d)) {
      err << "InvalidArgument: deltas must be >= 0 (got " << d << ")\n";
      return kValidationFailed;
    }
  }
  auto loaded = detail::load(config_path, err);
  if (!loaded) return kValidationFailed;
  const Dataset& dataset = loaded->dataset;
  ScenarioId base;
  try {
    base = ScenarioId(dataset.options().sensitivity_base);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kValidationFailed;
  }
  if (!dataset.has_schedule(base)) {
    err << "CoverageError: no renovation schedule for sensitivity base scenario " << base.name()
        << '\n';
    return kValidationFailed;
  }

  const auto dir = detail::resolve_out_dir(*loaded, out_dir);
  detail::OutputSet files(dir);
  try {
    const double base_nb = cumulative_nb(run_scenario(dataset, base, 0.0, threads));
    std::vector<SensitivityRow> rows;
    for (double d : deltas) {
      const double value = renovation_sensitivity(dataset, base, d, threads, base_nb);
      rows.push_back({d, value});
      out << "delta " << format_number(d) << " on " << base.name()
          << ": average new construction reduced by " << format_number(value) << " Mm2/yr\n";
    }
    files.add("sensitivity.csv",
              detail::render([&](std::ostream& o) { write_sensitivity_csv(o, rows); }));
    files.add("manifest.json", detail::manifest_json(*loaded, "sweep"));
    files.commit();
  } catch (const std::exception& e) {
    files.discard();
    err << "engine error: " << e.what() << '\n';
    return kEngineFailed;
  }
  return kOk;
}

}  // namespace globus::cli
