#include "ecg/golden.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ecg/curve_lab.hpp"
#include "ecg/sieve_estimates.hpp"

namespace ecg {
namespace {

Report count_table_report(CountStrategy strategy, const RunOptions& opt) {
  constexpr u64 kSide = 64;
  std::vector<u64> bits = occurrence_matrix(kSide, kSide, strategy, opt);
  auto bit_at = [&](u64 m, u64 k) -> u64 {
    u64 idx = (m - 1) * kSide + (k - 1);
    return bits[idx >> 6] >> (idx & 63) & 1;
  };
  Report rep;
  rep.columns = {"max_m", "max_k", "count"};
  std::vector<std::vector<u64>> pref(kSide + 1, std::vector<u64>(kSide + 1, 0));
  for (u64 m = 1; m <= kSide; ++m)
    for (u64 k = 1; k <= kSide; ++k) {
      pref[m][k] =
          pref[m - 1][k] + pref[m][k - 1] - pref[m - 1][k - 1] + bit_at(m, k);
      rep.add_row({m, k, pref[m][k]});
    }
  return rep;
}

Report census_report(const RunOptions& opt) {
  CensusOptions copt;
  copt.threads = opt.threads;
  Report rep;
  rep.columns = {"p", "m", "k", "count"};
  for (const auto& [shape, count] : census(97, copt))
    rep.add_row({u64(97), shape.m, shape.k, count});
  return rep;
}

Report euler_table_report() {
  Report rep;
  rep.columns = {"d", "conductor", "square_part", "y", "product"};
  for (u64 d : {u64(3), u64(4), u64(7), u64(8), u64(11)}) {
    CharacterSpec chi = make_character(d);
    rep.add_row({d, chi.conductor, chi.square_part, u64(100000),
                 euler_product(chi, 100000)});
  }
  return rep;
}

Report ratio_boxes_report(CountStrategy strategy, const RunOptions& opt) {
  Report rep;
  rep.columns = {"max_m", "max_k",         "count",
                 "thm12", "thm13_density", "thm14_ratio"};
  const std::array<std::pair<u64, u64>, 4> boxes = {
      {{10, 100000}, {1000, 4}, {10000, 4}, {100000, 4}}};
  for (auto [m, k] : boxes) {
    TheoremRatios r = theorem_ratios(m, k, strategy, opt);
    rep.add_row({m, k, r.count, r.thm12, r.thm13_density, r.thm14_ratio});
  }
  return rep;
}

Report build_report(const std::string& name, CountStrategy strategy,
                    const RunOptions& opt) {
  if (name == "count_table_64") return count_table_report(strategy, opt);
  if (name == "census_p97") return census_report(opt);
  if (name == "euler_products_1e5") return euler_table_report();
  if (name == "theorem_ratio_boxes") return ratio_boxes_report(strategy, opt);
  throw std::invalid_argument("unknown golden experiment: " + name);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::vector<std::string> golden_names() {
  return {"count_table_64", "census_p97", "euler_products_1e5",
          "theorem_ratio_boxes"};
}

Report golden_bless_report(const std::string& name, const RunOptions& opt) {
  return build_report(name, CountStrategy::kDirect, opt);
}

Report golden_check_report(const std::string& name, const RunOptions& opt) {
  return build_report(name, CountStrategy::kPrimeDriven, opt);
}

GoldenOutcome golden_compare(const std::string& name, const Report& fresh,
                             const std::string& blessed_csv) {
  auto fail = [&](std::string detail) {
    return GoldenOutcome{name, false, std::move(detail)};
  };
  std::vector<std::string> lines = split(blessed_csv, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) return fail("blessed file is empty");

  std::string header;
  for (size_t i = 0; i < fresh.columns.size(); ++i) {
    if (i) header += ',';
    header += fresh.columns[i];
  }
  if (lines[0] != header)
    return fail("header mismatch: blessed '" + lines[0] + "', expected '" +
                header + "'");
  if (lines.size() - 1 != fresh.rows.size())
    return fail("row count mismatch: blessed " +
                std::to_string(lines.size() - 1) + ", computed " +
                std::to_string(fresh.rows.size()));

  for (size_t r = 0; r < fresh.rows.size(); ++r) {
    std::vector<std::string> tokens = split(lines[r + 1], ',');
    if (tokens.size() != fresh.columns.size())
      return fail("row " + std::to_string(r + 1) + " has " +
                  std::to_string(tokens.size()) + " cells, expected " +
                  std::to_string(fresh.columns.size()));
    for (size_t c = 0; c < tokens.size(); ++c) {
      const Cell& cell = fresh.rows[r][c];
      std::string where = "row " + std::to_string(r + 1) + " column " +
                          fresh.columns[c] + ": ";
      if (std::holds_alternative<double>(cell)) {
        const std::string& tok = tokens[c];
        char* end = nullptr;
        double blessed = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size())
          return fail(where + "unparseable real '" + tok + "'");
        double got = std::get<double>(cell);
        double tol = 1e-9 * std::max(1.0, std::abs(blessed));
        if (!(std::abs(got - blessed) <= tol))
          return fail(where + "blessed " + tok + ", got " +
                      cell_to_string(cell));
      } else if (cell_to_string(cell) != tokens[c]) {
        return fail(where + "blessed '" + tokens[c] + "', got '" +
                    cell_to_string(cell) + "'");
      }
    }
  }
  return GoldenOutcome{name, true, ""};
}

void golden_bless(const std::filesystem::path& dir, const RunOptions& opt) {
  std::filesystem::create_directories(dir);
  for (const std::string& name : golden_names()) {
    std::filesystem::path path = dir / (name + ".csv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write golden file: " + path.string());
    write_report(out, golden_bless_report(name, opt), ReportFormat::kCsv);
  }
}

std::vector<GoldenOutcome> golden_check(const std::filesystem::path& dir,
                                        const RunOptions& opt) {
  std::vector<GoldenOutcome> outcomes;
  for (const std::string& name : golden_names()) {
    std::filesystem::path path = dir / (name + ".csv");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      outcomes.push_back(
          {name, false, "missing golden file: " + path.string()});
      continue;
    }
    std::ostringstream text;
    text << in.rdbuf();
    outcomes.push_back(
        golden_compare(name, golden_check_report(name, opt), text.str()));
  }
  return outcomes;
}

}  // namespace ecg
