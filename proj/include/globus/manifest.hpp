#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>

#include <json.hpp>

#include "globus/csv.hpp"
#include "globus/domain.hpp"
#include "globus/error.hpp"
#include "globus/ingest.hpp"

#ifndef GLOBUS_VERSION
#define GLOBUS_VERSION "0.0.0"
#endif

namespace globus {

inline constexpr std::string_view kEngineVersion = GLOBUS_VERSION;

/// Incremental SHA-256 over OpenSSL's EVP interface.
class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
      throw std::runtime_error("SHA-256 initialisation failed");
  }

  Sha256& update(std::string_view bytes) {
    EVP_DigestUpdate(ctx_.get(), bytes.data(), bytes.size());
    return *this;
  }

  /// Length-prefixed field, so that concatenation boundaries are part of
  /// the digest.
  Sha256& field(std::string_view bytes) {
    const std::string len = std::to_string(bytes.size()) + ":";
    return update(len).update(bytes);
  }

  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int n = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &n);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < n; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 0xf];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

/// Digest of the config bytes and every input file's bytes, in role order.
inline std::string config_hash(const RunConfig& rc) {
  Sha256 h;
  h.field("config").field(rc.config_text);
  for (const auto& [role, path] : rc.input_files) {
    auto body = csv::read_file(path);
    if (!body) throw Error(ErrorKind::MissingFile, path.string() + ": cannot read for hashing");
    h.field(role).field(*body);
  }
  return h.hex();
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point tp = std::chrono::system_clock::now()) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  std::string config_hash;
  std::string engine_version{kEngineVersion};
  std::string timestamp;
  std::vector<std::string> scenarios;
  std::size_t cell_count = 0;
  std::string command;
};

inline void to_json(nlohmann::json& j, const RunManifest& m) {
  j = {{"config_hash", m.config_hash}, {"engine_version", m.engine_version},
       {"timestamp", m.timestamp},     {"scenarios", m.scenarios},
       {"cell_count", m.cell_count},   {"command", m.command}};
}

}  // namespace globus
