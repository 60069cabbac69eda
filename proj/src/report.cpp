#include "modegate/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "modegate/errors.hpp"

namespace modegate::report {

std::string format_double(double value, int precision) {
  char spec[16];
  std::snprintf(spec, sizeof spec, "%%.%dg", precision);
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, value);
  return buf;
}

std::string csv_from_table(const SweepResult& table, int precision) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c], precision);
    }
    out += '\n';
  }
  return out;
}

double rounded(double value, int precision) {
  return std::strtod(format_double(value, precision).c_str(), nullptr);
}

nlohmann::ordered_json json_from_table(const SweepResult& table,
                                       int precision) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto out_row = nlohmann::ordered_json::array();
    for (double v : row) out_row.push_back(rounded(v, precision));
    rows.push_back(out_row);
  }
  doc["rows"] = rows;
  return doc;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
  if (!out) throw Error("failed writing output file: " + path);
}

}  // namespace modegate::report
