#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "globus/error.hpp"

namespace globus::csv {

/// One data row with its 1-based line number in the source file.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Comma-delimited table with a mandatory header row. No quoting.
struct Table {
  std::string source;  // path as given, used in messages
  std::vector<std::string> header;
  std::vector<Row> rows;
  bool header_ok = false;

  std::string where(std::size_t line) const { return source + ":" + std::to_string(line); }

  /// Index of a header column; the header has been validated beforehand.
  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw Error(ErrorKind::SchemaError, source + ": no column '" + std::string(name) + "'");
  }
};

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    out.emplace_back(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses CSV text. Header columns must be exactly `expected` (any order).
/// Problems are appended to diags; rows with the wrong field count are
/// dropped.
inline Table parse(std::string_view text, const std::string& source,
                   const std::vector<std::string_view>& expected, std::vector<Diagnostic>& diags) {
  Table t;
  t.source = source;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::size_t line_no = 0, pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    auto fields = split(line);
    if (!have_header) {
      have_header = true;
      t.header = fields;
      const std::size_t before = diags.size();
      for (const auto& col : t.header) {
        bool known = false;
        for (auto e : expected) known = known || col == e;
        if (!known)
          diags.push_back({ErrorKind::SchemaError,
                           t.where(line_no) + ": unknown column '" + col + "'"});
      }
      for (auto e : expected) {
        std::size_t count = 0;
        for (const auto& col : t.header) count += col == e;
        if (count == 0)
          diags.push_back({ErrorKind::SchemaError,
                           t.where(line_no) + ": missing column '" + std::string(e) + "'"});
        else if (count > 1)
          diags.push_back({ErrorKind::SchemaError,
                           t.where(line_no) + ": duplicate column '" + std::string(e) + "'"});
      }
      t.header_ok = diags.size() == before;
      continue;
    }
    if (fields.size() != t.header.size()) {
      diags.push_back({ErrorKind::SchemaError, t.where(line_no) + ": expected " +
                                                   std::to_string(t.header.size()) +
                                                   " fields, got " +
                                                   std::to_string(fields.size())});
      continue;
    }
    t.rows.push_back({line_no, std::move(fields)});
  }
  if (!have_header)
    diags.push_back({ErrorKind::SchemaError, source + ": empty file, header row required"});
  return t;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace globus::csv
