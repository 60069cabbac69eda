#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace modegate {

// Plain numeric table used for harmonic scans, sensitivity sweeps and figure
// data: named columns over uniform double rows. Kept deliberately dumb so CSV
// and JSON emitters can serialize any result the same way.
struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == name) return c;
    throw std::out_of_range("no such column: " + name);
  }
  double at(std::size_t row, const std::string& name) const {
    return rows.at(row).at(column_index(name));
  }
};

}  // namespace modegate
