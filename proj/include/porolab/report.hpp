#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace porolab {

/// %.17g rendering: shortest text that round-trips the IEEE double, the
/// same on every run and platform we target.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using CsvCell = std::variant<std::string, double, long long>;

inline std::string render_cell(const CsvCell& c) {
  if (std::holds_alternative<double>(c))
    return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c))
    return std::to_string(std::get<long long>(c));
  return std::get<std::string>(c);
}

/// Fixed-column CSV table. Columns are declared once; rows are appended in
/// the order produced, so output is byte-identical across runs.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<CsvCell>> rows;

  void add_row(std::vector<CsvCell> row) {
    if (row.size() != columns.size())
      throw std::invalid_argument("CsvTable: row width mismatch");
    rows.push_back(std::move(row));
  }

  std::string render() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += render_cell(row[i]);
      }
      out += '\n';
    }
    return out;
  }
};

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

inline void write_json_file(const std::filesystem::path& path,
                            const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace porolab
