#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace waybell::io {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Format with 12 significant digits -- the output contract for every
/// emitted numeric value.
std::string format_g12(double value);

/// The double that format_g12's text parses back to. Idempotent.
double round12(double value);

/// Column-labelled numeric table backing the CSV and JSON emitters.
struct CurveTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// CSV: UTF-8, comma separators, one header row, LF line endings.
std::string to_csv(const CurveTable& table);
CurveTable parse_csv(const std::string& text);

// JSON: single object {"columns": [...], "rows": [[...], ...]}.
std::string to_json(const CurveTable& table);
CurveTable parse_table_json(const std::string& text);

/// Write a payload to a file, throwing IoError on any failure.
void write_file(const std::string& path, const std::string& payload);

}  // namespace waybell::io
