#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ecg/occurrence.hpp"
#include "ecg/report.hpp"

namespace ecg {

struct GoldenOutcome {
  std::string name;
  bool ok = false;
  std::string detail;  // empty when ok
};

// fixed experiment roster, in emission order
std::vector<std::string> golden_names();

// slow-path evaluation used to create a golden file (direct counting oracle
// where a fast alternative exists)
Report golden_bless_report(const std::string& name, const RunOptions& opt = {});

// fast-path evaluation used when re-checking against a golden file
Report golden_check_report(const std::string& name, const RunOptions& opt = {});

// diff a freshly computed report against blessed CSV text: integer and text
// cells bit-exact, reals to 1e-9 relative
GoldenOutcome golden_compare(const std::string& name, const Report& fresh,
                             const std::string& blessed_csv);

// write every experiment's blessed CSV into dir (created if absent)
void golden_bless(const std::filesystem::path& dir, const RunOptions& opt = {});

// re-run every experiment and diff against dir's files
std::vector<GoldenOutcome> golden_check(const std::filesystem::path& dir,
                                        const RunOptions& opt = {});

}  // namespace ecg
