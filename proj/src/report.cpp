#include "ecg/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ecg {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string cell_to_json(const Cell& cell) {
  struct Visitor {
    std::string operator()(u64 v) const { return std::to_string(v); }
    std::string operator()(i64 v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      if (!std::isfinite(v)) return "null";
      return format_double(v);
    }
    std::string operator()(const std::string& v) const {
      return '"' + json_escape(v) + '"';
    }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("report row arity does not match the header");
  rows.push_back(std::move(row));
}

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown format '" + name + "' (want csv or json)");
}

std::string cell_to_string(const Cell& cell) {
  struct Visitor {
    std::string operator()(u64 v) const { return std::to_string(v); }
    std::string operator()(i64 v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

void write_report(std::ostream& out, const Report& report, ReportFormat fmt) {
  if (fmt == ReportFormat::kCsv) {
    for (size_t i = 0; i < report.columns.size(); ++i)
      out << (i ? "," : "") << report.columns[i];
    out << '\n';
    for (const auto& row : report.rows) {
      for (size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << cell_to_string(row[i]);
      out << '\n';
    }
    return;
  }
  out << "[\n";
  for (size_t r = 0; r < report.rows.size(); ++r) {
    out << "  {";
    for (size_t i = 0; i < report.columns.size(); ++i) {
      out << (i ? ", " : "") << '"' << json_escape(report.columns[i])
          << "\": " << cell_to_json(report.rows[r][i]);
    }
    out << (r + 1 < report.rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
}

std::string to_string(const Report& report, ReportFormat fmt) {
  std::ostringstream out;
  write_report(out, report, fmt);
  return out.str();
}

}  // namespace ecg
