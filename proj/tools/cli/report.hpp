#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "brlab/fit.hpp"
#include "cli/cache.hpp"

namespace brlab::cli {

inline constexpr int kReportSchemaVersion = 1;

struct Row {
  std::string check;
  std::string criterion;  // acceptance criterion the row reports, if any
  bool pass = false;
  double measured = 0;
  double expected = 0;
  double tolerance = 0;
  std::string kind;  // "predicted", "fitted", "closed form", "identity", "bound"
  std::string note;
};

// one log-log scatter with its fitted line
struct Plot {
  std::string file;  // e.g. "lp_fit.svg"
  std::string title, x_label, y_label;
  std::vector<double> x, y;
  ExponentFit fit;
  double expected_slope = 0;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }
};

// shortest round-trip decimal form, for CSV cells
std::string num(double v);

struct Report {
  std::string suite;
  std::vector<Row> rows;
  std::vector<Plot> plots;
  Table data;
  double wall_clock = 0;
  long evals = 0;
  CacheStats cache;

  bool ok() const;
  std::vector<const Row*> failures() const;
};

nlohmann::json to_json(const Report& r);
std::string to_csv(const Table& t);
// writes report.json, data.csv and the plots into dir, plus summary.svg
void write_report(const Report& r, const std::string& dir);

}  // namespace brlab::cli
