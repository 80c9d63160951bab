#include <string>

#include "doctest.h"
#include "ecg/golden.hpp"
#include "ecg/report.hpp"

using ecg::Cell;
using ecg::i64;
using ecg::Report;
using ecg::ReportFormat;
using ecg::u64;

namespace {

Report sample_report() {
  Report rep;
  rep.columns = {"n", "delta", "ratio", "label"};
  rep.add_row({u64(7), i64(-3), 0.5, std::string("alpha")});
  rep.add_row({u64(1000000), i64(42), 1.0 / 3.0, std::string("beta")});
  return rep;
}

}  // namespace

TEST_CASE("csv rendering: header, LF endings, %.12g reals") {
  std::string csv = ecg::to_string(sample_report(), ReportFormat::kCsv);
  CHECK(csv ==
        "n,delta,ratio,label\n"
        "7,-3,0.5,alpha\n"
        "1000000,42,0.333333333333,beta\n");
}

TEST_CASE("json rendering: array of flat objects, keys in column order") {
  std::string json = ecg::to_string(sample_report(), ReportFormat::kJson);
  CHECK(json ==
        "[\n"
        "  {\"n\": 7, \"delta\": -3, \"ratio\": 0.5, \"label\": \"alpha\"},\n"
        "  {\"n\": 1000000, \"delta\": 42, \"ratio\": 0.333333333333, "
        "\"label\": \"beta\"}\n"
        "]\n");

  Report empty;
  empty.columns = {"a"};
  CHECK(ecg::to_string(empty, ReportFormat::kJson) == "[\n]\n");
  CHECK(ecg::to_string(empty, ReportFormat::kCsv) == "a\n");
}

TEST_CASE("json string cells are escaped") {
  Report rep;
  rep.columns = {"text"};
  rep.add_row({std::string("say \"hi\"\tback\\now")});
  std::string json = ecg::to_string(rep, ReportFormat::kJson);
  CHECK(json == "[\n  {\"text\": \"say \\\"hi\\\"\\tback\\\\now\"}\n]\n");
}

TEST_CASE("cell formatting pins") {
  CHECK(ecg::cell_to_string(Cell(1.0)) == "1");
  CHECK(ecg::cell_to_string(Cell(0.5)) == "0.5");
  CHECK(ecg::cell_to_string(Cell(1e20)) == "1e+20");
  CHECK(ecg::cell_to_string(Cell(1.0 / 3.0)) == "0.333333333333");
  CHECK(ecg::cell_to_string(Cell(u64(18446744073709551615ULL))) ==
        "18446744073709551615");
  CHECK(ecg::cell_to_string(Cell(i64(-9223372036854775807LL))) ==
        "-9223372036854775807");
}

TEST_CASE("report validation and format parsing") {
  Report rep;
  rep.columns = {"a", "b"};
  CHECK_THROWS_AS(rep.add_row({u64(1)}), std::logic_error);
  CHECK(ecg::parse_format("csv") == ReportFormat::kCsv);
  CHECK(ecg::parse_format("json") == ReportFormat::kJson);
  CHECK_THROWS_AS((void)ecg::parse_format("xml"), std::invalid_argument);
}

TEST_CASE("golden diff: exact integers, tolerant reals") {
  Report fresh;
  fresh.columns = {"n", "value"};
  fresh.add_row({u64(3), 1.25});
  fresh.add_row({u64(4), 2.5});
  std::string blessed = ecg::to_string(fresh, ReportFormat::kCsv);

  CHECK(ecg::golden_compare("t", fresh, blessed).ok);

  // a real drifted within 1e-9 relative still passes
  Report close = fresh;
  close.rows[1][1] = 2.5 * (1.0 + 5e-10);
  CHECK(ecg::golden_compare("t", close, blessed).ok);

  // beyond tolerance fails and names the cell
  Report far = fresh;
  far.rows[1][1] = 2.5 * (1.0 + 5e-8);
  ecg::GoldenOutcome bad = ecg::golden_compare("t", far, blessed);
  CHECK_FALSE(bad.ok);
  CHECK(bad.detail.find("row 2") != std::string::npos);
  CHECK(bad.detail.find("value") != std::string::npos);

  // integers are bit-exact
  Report intdrift = fresh;
  intdrift.rows[0][0] = u64(5);
  CHECK_FALSE(ecg::golden_compare("t", intdrift, blessed).ok);
}

TEST_CASE("golden diff: structural failures are named") {
  Report fresh;
  fresh.columns = {"n", "value"};
  fresh.add_row({u64(3), 1.25});

  CHECK(ecg::golden_compare("t", fresh, "").detail == "blessed file is empty");
  CHECK(ecg::golden_compare("t", fresh, "x,y\n3,1.25\n")
            .detail.find("header mismatch") != std::string::npos);
  CHECK(ecg::golden_compare("t", fresh, "n,value\n")
            .detail.find("row count mismatch") != std::string::npos);
  CHECK(ecg::golden_compare("t", fresh, "n,value\n3\n")
            .detail.find("has 1 cells") != std::string::npos);
  CHECK(ecg::golden_compare("t", fresh, "n,value\n3,zebra\n")
            .detail.find("unparseable real") != std::string::npos);
}

TEST_CASE("golden roster is fixed") {
  std::vector<std::string> names = ecg::golden_names();
  REQUIRE(names.size() == 4);
  CHECK(names[0] == "count_table_64");
  CHECK(names[1] == "census_p97");
  CHECK(names[2] == "euler_products_1e5");
  CHECK(names[3] == "theorem_ratio_boxes");
}

TEST_CASE("golden bless/check round trip on the fast experiments") {
  // the two cheap experiments exercise file IO end to end; the counting
  // experiments are covered by the acceptance harness
  ecg::RunOptions opt;
  ecg::Report blessed = ecg::golden_bless_report("census_p97", opt);
  ecg::Report checked = ecg::golden_check_report("census_p97", opt);
  CHECK(ecg::golden_compare("census_p97", checked,
                            ecg::to_string(blessed, ReportFormat::kCsv))
            .ok);

  ecg::Report euler_blessed = ecg::golden_bless_report("euler_products_1e5", opt);
  ecg::Report euler_checked = ecg::golden_check_report("euler_products_1e5", opt);
  CHECK(ecg::golden_compare("euler_products_1e5", euler_checked,
                            ecg::to_string(euler_blessed, ReportFormat::kCsv))
            .ok);

  CHECK_THROWS_AS((void)ecg::golden_bless_report("nonsense", opt),
                  std::invalid_argument);
}
