#include "cli/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "brlab/error.hpp"
#include "cli/svg.hpp"

namespace brlab::cli {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

bool Report::ok() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::vector<const Row*> Report::failures() const {
  std::vector<const Row*> out;
  for (const auto& r : rows)
    if (!r.pass) out.push_back(&r);
  return out;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"check", row.check},
                    {"criterion", row.criterion},
                    {"pass", row.pass},
                    {"measured", row.measured},
                    {"expected", row.expected},
                    {"tolerance", row.tolerance},
                    {"kind", row.kind},
                    {"note", row.note}});
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& p : r.plots)
    fits.push_back({{"file", p.file},
                    {"slope", p.fit.slope},
                    {"intercept", p.fit.intercept},
                    {"half_width", p.fit.half_width},
                    {"residual_rms", p.fit.residual_rms},
                    {"n", p.fit.n},
                    {"degenerate", p.fit.degenerate},
                    {"expected_slope", p.expected_slope}});
  return {{"schema_version", kReportSchemaVersion},
          {"suite", r.suite},
          {"pass", r.ok()},
          {"rows", rows},
          {"fits", fits},
          {"wall_clock_s", r.wall_clock},
          {"evals", r.evals},
          {"cache",
           {{"hits", r.cache.hits},
            {"misses", r.cache.misses},
            {"rebuilt", r.cache.rebuilt},
            {"stored", r.cache.stored},
            {"compared", r.cache.compared},
            {"max_rel_diff", r.cache.max_rel_diff}}}};
}

std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      const auto& c = cells[i];
      if (c.find_first_of(",\"\n") == std::string::npos) {
        out += c;
        continue;
      }
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) {
    if (r.size() != t.header.size()) throw Error("CSV row width does not match the header");
    line(r);
  }
  return out;
}

void write_report(const Report& r, const std::string& dir) {
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + (fs::path(dir) / name).string());
    out << text;
  };
  put("report.json", to_json(r).dump(2) + "\n");
  put("data.csv", to_csv(r.data));
  for (const auto& p : r.plots) put(p.file, plot_svg(p));
  put("summary.svg", summary_svg(r.suite, r.rows));
}

}  // namespace brlab::cli
