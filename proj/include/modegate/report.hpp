#pragma once

#include <string>

#include <json.hpp>

#include "modegate/sweep.hpp"

namespace modegate::report {

// "%.{precision}g" with the C locale semantics of snprintf: no thousands
// separators, '.' decimal point, byte-stable for a given (value, precision).
std::string format_double(double value, int precision);

// Header row + one line per data row, '\n' line endings, no trailing spaces.
std::string csv_from_table(const SweepResult& table, int precision);

// {"columns": [...], "rows": [[...], ...]} with values rounded through
// format_double so CSV and JSON carry the same digits.
nlohmann::ordered_json json_from_table(const SweepResult& table,
                                       int precision);

// Round-trip a value through its formatted representation; keeps JSON numbers
// at the configured precision while staying numeric in the document.
double rounded(double value, int precision);

// Write to the path, or to stdout when the path is empty.
void write_output(const std::string& text, const std::string& path);

}  // namespace modegate::report
