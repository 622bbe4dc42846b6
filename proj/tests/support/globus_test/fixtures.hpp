#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

namespace globus::testing {

inline std::filesystem::path source_dir() { return GLOBUS_SOURCE_DIR; }
inline std::filesystem::path global_config() { return source_dir() / "data/global/config.json"; }
inline std::filesystem::path toy_config() { return source_dir() / "data/toy/config.json"; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("globus-test-" + std::to_string(::getpid()) + "-" + std::to_string(stamp) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Copies a fixture directory so a test can edit it.
inline void copy_fixture(const std::filesystem::path& from_config, const TempDir& to) {
  for (const auto& entry : std::filesystem::directory_iterator(from_config.parent_path()))
    if (entry.is_regular_file()) std::filesystem::copy_file(entry.path(), to / entry.path().filename().string());
}

/// Relative closeness with an absolute floor at the ledger purge threshold,
/// below which areas are treated as zero.
inline bool flows_close(double a, double b, double rel = 1e-9) {
  const double diff = std::abs(a - b);
  return diff <= 1e-12 || diff <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace globus::testing
