#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace globus {

enum class ErrorKind {
  MissingFile,
  SchemaError,
  RangeError,
  CoverageError,
  YearOutOfRange,
  LedgerCorrupt,
  StockUnderflow,
  NegativeNewConstruction,
  ZeroPopulation,
  ZeroStock,
  NonPositiveStart,
  InvalidArgument,
};

inline constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::CoverageError: return "CoverageError";
    case ErrorKind::YearOutOfRange: return "YearOutOfRange";
    case ErrorKind::LedgerCorrupt: return "LedgerCorrupt";
    case ErrorKind::StockUnderflow: return "StockUnderflow";
    case ErrorKind::NegativeNewConstruction: return "NegativeNewConstruction";
    case ErrorKind::ZeroPopulation: return "ZeroPopulation";
    case ErrorKind::ZeroStock: return "ZeroStock";
    case ErrorKind::NonPositiveStart: return "NonPositiveStart";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Base exception for every failure the engine reports. The message is
/// prefixed with the kind name, e.g. "RangeError: ...".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// One problem found while loading input data.
struct Diagnostic {
  ErrorKind kind;
  std::string message;  // includes file:line context where available

  std::string str() const { return std::string(to_string(kind)) + ": " + message; }
};

/// Thrown by load_dataset when validation found one or more problems.
/// Carries every diagnostic, not only the first.
class DatasetError : public std::runtime_error {
 public:
  explicit DatasetError(std::vector<Diagnostic> diagnostics)
      : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  static std::string summarize(const std::vector<Diagnostic>& diags) {
    std::string out = std::to_string(diags.size()) + " dataset problem(s)";
    if (!diags.empty()) out += "; first: " + diags.front().str();
    return out;
  }

  std::vector<Diagnostic> diagnostics_;
};

}  // namespace globus
