#include "waybell/table.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace waybell::io {

namespace {

void check_rectangular(const CurveTable& table) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw IoError("table row width does not match the header");
    }
  }
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

double parse_double(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) {
    throw IoError("malformed numeric cell: '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_g12(double value) {
  if (value == 0.0) {
    value = 0.0;  // normalize the sign of zero
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

double round12(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return std::strtod(buffer, nullptr);
}

std::string to_csv(const CurveTable& table) {
  check_rectangular(table);
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) {
      out << ',';
    }
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) {
        out << ',';
      }
      out << format_g12(row[c]);
    }
    out << '\n';
  }
  return out.str();
}

CurveTable parse_csv(const std::string& text) {
  CurveTable table;
  std::istringstream stream(text);
  std::string line;
  if (!std::getline(stream, line)) {
    throw IoError("empty CSV input");
  }
  table.columns = split_line(line);
  while (std::getline(stream, line)) {
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> cells = split_line(line);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells) {
      row.push_back(parse_double(cell));
    }
    table.rows.push_back(std::move(row));
  }
  check_rectangular(table);
  return table;
}

std::string to_json(const CurveTable& table) {
  check_rectangular(table);
  nlohmann::ordered_json payload;
  payload["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto json_row = nlohmann::ordered_json::array();
    for (double value : row) {
      json_row.push_back(round12(value));
    }
    rows.push_back(std::move(json_row));
  }
  payload["rows"] = std::move(rows);
  return payload.dump(2) + "\n";
}

CurveTable parse_table_json(const std::string& text) {
  nlohmann::json payload;
  try {
    payload = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    throw IoError(std::string("malformed JSON table: ") + error.what());
  }
  CurveTable table;
  table.columns = payload.at("columns").get<std::vector<std::string>>();
  for (const auto& row : payload.at("rows")) {
    table.rows.push_back(row.get<std::vector<double>>());
  }
  check_rectangular(table);
  return table;
}

void write_file(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << payload;
  out.flush();
  if (!out) {
    throw IoError("failed while writing '" + path + "'");
  }
}

}  // namespace waybell::io
