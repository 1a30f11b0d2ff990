#pragma once

#include <ostream>
#include <vector>

#include "cli/cache.hpp"
#include "cli/config.hpp"
#include "cli/report.hpp"

namespace brlab::cli {

struct SuiteContext {
  const RunConfig& cfg;
  ProfileCache& cache;
  std::ostream& log;
};

Report run_decay(SuiteContext& ctx);
Report run_lp(SuiteContext& ctx);
Report run_welldef(SuiteContext& ctx);
Report run_weyl(SuiteContext& ctx);
Report run_subordination(SuiteContext& ctx);
Report run_divergence(SuiteContext& ctx);
// precomputes psi tables and the member tables, norms and peaks the other suites use
Report cache_profiles(SuiteContext& ctx);

// validates the config, runs the selected suite (or all six) and writes
// <out>/<suite>/{report.json, data.csv, *.svg}; "all" also writes <out>/all
std::vector<Report> run_suite(const RunConfig& cfg, std::ostream& log);

}  // namespace brlab::cli
