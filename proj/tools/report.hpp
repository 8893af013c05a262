#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace apg::cli {

struct ReportRow {
  int id = 0;
  std::string category;  // ap, nap, identity, gamma
  std::string group;
  std::string quantity;
  std::string expected;
  std::string got;
  std::string certificate;
  std::string detail;
  bool ok = false;
  double ms = 0;
};

/// The reference rows, in fixed order, optionally filtered by category or
/// by a comma-separated id list.
std::vector<ReportRow> build_report(const std::string& only);

/// CSV without timings, so repeated runs are byte-identical.
std::string report_csv(const std::vector<ReportRow>& rows);

/// Prints the text table and writes the CSV when a path is given. Returns
/// whether every row matched.
bool run_report(const std::string& only, const std::string& csv_path, std::ostream& out);

/// Family ids used for the corpus-wide rows.
const std::vector<std::string>& report_corpus();

}  // namespace apg::cli
