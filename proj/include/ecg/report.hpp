#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "ecg/core_arith.hpp"

namespace ecg {

using Cell = std::variant<u64, i64, double, std::string>;

// one tabular result: a header plus homogeneous rows
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // enforces arity
};

enum class ReportFormat { kCsv, kJson };

ReportFormat parse_format(const std::string& name);  // "csv" | "json"

// CSV rendering of a single cell; reals use %.12g
std::string cell_to_string(const Cell& cell);

// CSV: header row + data rows, LF endings, no quoting (tokens never contain
// commas). JSON: array of flat objects, keys in column order.
void write_report(std::ostream& out, const Report& report, ReportFormat fmt);

std::string to_string(const Report& report, ReportFormat fmt);

}  // namespace ecg
