#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "brlab/params.hpp"

namespace brlab::cli {

inline constexpr int kConfigSchemaVersion = 1;

// suites accepted on the command line; "all" runs the first six in order
const std::vector<std::string>& suite_names();

struct Tolerances {
  double lp_slope = 0.1;           // absolute, L^p and peak exponents
  double divergence_slope = 0.15;  // relative to delta(d,p)
  double control_slope = 0.05;     // absolute, when delta(d,p) = 0
  double plancherel = 1e-4;
  double far_ratio = 1e-4;
  double regime_factor = 4;
  double reconstruction = 1e-6;
  double subordination = 1e-3;
  double weyl_constant_spread = 2;
  double route = 1e-4;
  double cross = 1e-6;
  double fraction = 0.02;
  double uniformity = 0.05;
  double cache = 1e-12;
};

struct Grids {
  std::vector<int> eps_k = {4, 5, 6, 7, 8, 9, 10};  // eps = 2^-k
  std::vector<double> x_over_xc = {0.05, 0.1, 0.2, 0.5, 0.8, 1.0, 1.3, 2.0, 4.0, 10.0, 30.0, 100.0};
  int truncation_eps_k = 6;
  std::vector<int> far_eps_k = {4, 6, 8};  // members of the far-decay check
  std::vector<int> ks = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<int> welldef_ks = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> chirp_ks = {4, 5, 6, 7, 8, 9, 10, 11, 12};
  double chirp_p = 4;
  double t = 1;
  std::vector<double> nu = {0.3, 0.5, 1.5, 2.5};
  std::vector<double> subordination_delta = {0.5, 1.0};
  std::vector<double> subordination_x = {0.0, 0.8};
  int per_interval = 16;
  int random_x = 4;
  int trajectory_J = 9;
  bool blowup_numerical = false;
  int blowup_J = 3;
};

struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  std::string suite = "all";
  int d = 2;
  LebesgueExponent p = LebesgueExponent::infinity();
  double delta = 0.2;
  double gamma = 0.2;
  Grids grids;
  Tolerances tol;
  std::string out_dir = "br-lab-out";
  std::string cache_dir = ".br-lab-cache";
  bool no_cache = false;
  int jobs = 1;
  std::uint64_t seed = 0;

  std::vector<double> eps() const;
  // throws ValidationError before any computation
  void validate() const;
};

// overlays the keys present in `j` onto `base`; unknown keys are rejected
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
nlohmann::json to_json(const RunConfig& c);

}  // namespace brlab::cli
