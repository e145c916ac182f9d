#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gridpca {

/// Plain comma-separated table: header row plus data rows, cells trimmed of
/// surrounding whitespace. No quoting; UTF-8; '.' decimal separator.
struct CsvTable {
  std::string path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line per row
};

CsvTable read_csv(const std::string& path);

/// Column index of `name` in the header. Throws validation_error when absent.
std::size_t column_index(const CsvTable& table, const std::string& name);

/// Locale-independent strict double parse; error messages carry file:line and column.
double parse_double(const std::string& token, const std::string& path, std::size_t line_no,
                    const std::string& column);

/// Locale-independent formatting with 17 significant digits (round-trip exact).
std::string format_double(double value);

}  // namespace gridpca
