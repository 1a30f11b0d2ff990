// br-lab: runs the verification suites and writes <out>/<suite>/{report.json, data.csv, *.svg}.
// Exit status 0 iff every report row passes; 2 for invalid configuration.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "brlab/error.hpp"
#include "cli/config.hpp"
#include "cli/suites.hpp"

int main(int argc, char** argv) {
  using namespace brlab;
  using namespace brlab::cli;

  CLI::App app{"Bochner-Riesz divergence lab"};
  std::string suite, config_file, p_text;
  std::optional<int> d, jobs;
  std::optional<double> delta, gamma;
  std::optional<std::string> out, cache;
  bool no_cache = false;
  app.add_option("suite", suite, "decay | lp | welldef | weyl | subordination | divergence | all | cache")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  app.add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--d", d, "dimension");
  app.add_option("--p", p_text, "Lebesgue exponent, a number >= 2 or inf");
  app.add_option("--delta", delta, "Bochner-Riesz index");
  app.add_option("--gamma", gamma, "N = eps^-gamma");
  app.add_option("--out", out, "output directory");
  app.add_option("--cache", cache, "cache directory");
  app.add_option("--jobs", jobs, "worker threads");
  app.add_flag("--no-cache", no_cache, "recompute everything and compare against the cache");
  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  std::vector<Report> reports;
  try {
    if (!config_file.empty()) cfg = load_config(config_file);
    cfg.suite = suite;
    if (d) cfg.d = *d;
    if (!p_text.empty()) cfg.p = LebesgueExponent::parse(p_text);
    if (delta) cfg.delta = *delta;
    if (gamma) cfg.gamma = *gamma;
    if (out) cfg.out_dir = *out;
    if (cache) cfg.cache_dir = *cache;
    if (jobs) cfg.jobs = *jobs;
    if (no_cache) cfg.no_cache = true;
    cfg.validate();
  } catch (const ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }
  try {
    reports = run_suite(cfg, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  int failed = 0;
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      std::cout << (row.pass ? "PASS " : "FAIL ") << r.suite << ": " << row.check;
      if (!row.criterion.empty()) std::cout << " [" << row.criterion << "]";
      std::cout << "  measured " << row.measured << ", expected " << row.expected << ", tolerance " << row.tolerance
                << "\n";
    }
    for (const auto* row : r.failures()) {
      ++failed;
      std::cerr << "failing row: " << r.suite << ": " << row->check << " (" << row->note << ")\n";
    }
  }
  return failed ? 1 : 0;
}
