#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "brlab/error.hpp"

namespace brlab::cli {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ValidationError("unknown key '" + k + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("bad value for '" + std::string(key) + "' in " + where);
  }
}

LebesgueExponent read_p(const json& v) {
  if (v.is_string()) return LebesgueExponent::parse(v.get<std::string>());
  if (v.is_number()) return LebesgueExponent(v.get<double>());
  throw ValidationError("p must be a number or \"inf\"");
}

bool selected(const RunConfig& c, const std::string& suite) { return c.suite == suite || c.suite == "all"; }

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"decay", "lp", "welldef", "weyl", "subordination",
                                                 "divergence", "all", "cache"};
  return names;
}

std::vector<double> RunConfig::eps() const {
  std::vector<double> e;
  for (int k : grids.eps_k) e.push_back(std::ldexp(1.0, -k));
  return e;
}

void RunConfig::validate() const {
  if (schema_version != kConfigSchemaVersion)
    throw ValidationError("unsupported schema_version " + std::to_string(schema_version));
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw ValidationError("unknown suite '" + suite + "'");
  if (jobs < 1) throw ValidationError("jobs must be >= 1");
  if (grids.eps_k.empty()) throw ValidationError("eps grid is empty");
  std::set<int> seen;
  for (int k : grids.eps_k) {
    if (k < 1 || k > 40) throw ValidationError("eps_k entries must lie in [1, 40]");
    if (!seen.insert(k).second) throw ValidationError("eps_k entries must be distinct");
  }
  for (double e : eps()) Params(d, p, delta, gamma, e);
  Params(d, p, delta, gamma, std::ldexp(1.0, -grids.truncation_eps_k));
  if (grids.far_eps_k.empty()) throw ValidationError("far_eps_k is empty");
  for (int k : grids.far_eps_k) Params(d, p, delta, gamma, std::ldexp(1.0, -k));
  if (grids.per_interval < 1) throw ValidationError("per_interval must be >= 1");
  if (grids.random_x < 0) throw ValidationError("random_x must be >= 0");
  if (!(grids.t > 0)) throw ValidationError("t must be positive");
  for (int k : grids.ks)
    if (k < 0 || k > 40) throw ValidationError("truncation indices must lie in [0, 40]");
  for (double nu : grids.nu)
    if (!(nu > 0 && nu <= 3)) throw ValidationError("reconstruction orders must lie in (0, 3]");
  if (selected(*this, "lp") && grids.eps_k.size() < 3) throw ValidationError("lp suite needs at least 3 eps values");
  if (selected(*this, "weyl") && !(delta < 2)) throw ValidationError("weyl suite needs delta < 2");
  if (selected(*this, "welldef") && !(grids.chirp_p >= 2)) throw ValidationError("chirp_p must be >= 2");
  if (selected(*this, "divergence")) {
    if (grids.eps_k.size() < 5) throw ValidationError("divergence suite needs at least 5 eps values");
    if (d < 2) throw ValidationError("divergence suite needs d >= 2");
    if (grids.trajectory_J < 0 || grids.trajectory_J > 9) throw ValidationError("trajectory_J must lie in [0, 9]");
    if (grids.blowup_J < 1 || grids.blowup_J > kDefaultPrecisionCeiling)
      throw ValidationError("blowup_J must lie in [1, " + std::to_string(kDefaultPrecisionCeiling) + "]");
    const double dc = critical_index(d, p);
    // delta(d,p) = 0 is the bounded control case
    if (dc > 0) {
      Params(d, p, delta, gamma, 0.5).validate_for_divergence();
      if (!(sigma(d, p, delta, gamma) < 0)) {
        std::ostringstream os;
        os << "divergence suite needs sigma < 0: gamma = " << gamma << " must be below gamma_max = "
           << gamma_max(d, p, delta);
        throw ValidationError(os.str());
      }
    } else if (!p.is_infinite() && p.value() < 2.0 * d / (d - 1.0)) {
      throw ValidationError("divergence suite needs p >= 2d/(d-1)");
    }
  }
}

RunConfig config_from_json(const json& j, RunConfig c) {
  check_keys(j, {"schema_version", "suite", "params", "grids", "tolerances", "output", "jobs", "seed", "no_cache"},
             "config");
  if (!j.contains("schema_version")) throw ValidationError("config needs schema_version");
  read(j, "schema_version", c.schema_version, "config");
  if (c.schema_version != kConfigSchemaVersion)
    throw ValidationError("unsupported schema_version " + std::to_string(c.schema_version));
  read(j, "suite", c.suite, "config");
  read(j, "jobs", c.jobs, "config");
  read(j, "seed", c.seed, "config");
  read(j, "no_cache", c.no_cache, "config");
  if (j.contains("params")) {
    const auto& p = j["params"];
    check_keys(p, {"d", "p", "delta", "gamma"}, "params");
    read(p, "d", c.d, "params");
    if (p.contains("p")) c.p = read_p(p["p"]);
    read(p, "delta", c.delta, "params");
    read(p, "gamma", c.gamma, "params");
  }
  if (j.contains("grids")) {
    const auto& g = j["grids"];
    auto& o = c.grids;
    check_keys(g, {"eps_k", "x_over_xc", "truncation_eps_k", "far_eps_k", "ks", "welldef_ks", "chirp_ks", "chirp_p", "t", "nu",
                   "subordination_delta", "subordination_x", "per_interval", "random_x", "trajectory_J",
                   "blowup_numerical", "blowup_J"},
               "grids");
    read(g, "eps_k", o.eps_k, "grids");
    read(g, "x_over_xc", o.x_over_xc, "grids");
    read(g, "truncation_eps_k", o.truncation_eps_k, "grids");
    read(g, "far_eps_k", o.far_eps_k, "grids");
    read(g, "ks", o.ks, "grids");
    read(g, "welldef_ks", o.welldef_ks, "grids");
    read(g, "chirp_ks", o.chirp_ks, "grids");
    read(g, "chirp_p", o.chirp_p, "grids");
    read(g, "t", o.t, "grids");
    read(g, "nu", o.nu, "grids");
    read(g, "subordination_delta", o.subordination_delta, "grids");
    read(g, "subordination_x", o.subordination_x, "grids");
    read(g, "per_interval", o.per_interval, "grids");
    read(g, "random_x", o.random_x, "grids");
    read(g, "trajectory_J", o.trajectory_J, "grids");
    read(g, "blowup_numerical", o.blowup_numerical, "grids");
    read(g, "blowup_J", o.blowup_J, "grids");
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    auto& o = c.tol;
    check_keys(t, {"lp_slope", "divergence_slope", "control_slope", "plancherel", "far_ratio", "regime_factor",
                   "reconstruction", "subordination", "weyl_constant_spread", "route", "cross", "fraction",
                   "uniformity", "cache"},
               "tolerances");
    read(t, "lp_slope", o.lp_slope, "tolerances");
    read(t, "divergence_slope", o.divergence_slope, "tolerances");
    read(t, "control_slope", o.control_slope, "tolerances");
    read(t, "plancherel", o.plancherel, "tolerances");
    read(t, "far_ratio", o.far_ratio, "tolerances");
    read(t, "regime_factor", o.regime_factor, "tolerances");
    read(t, "reconstruction", o.reconstruction, "tolerances");
    read(t, "subordination", o.subordination, "tolerances");
    read(t, "weyl_constant_spread", o.weyl_constant_spread, "tolerances");
    read(t, "route", o.route, "tolerances");
    read(t, "cross", o.cross, "tolerances");
    read(t, "fraction", o.fraction, "tolerances");
    read(t, "uniformity", o.uniformity, "tolerances");
    read(t, "cache", o.cache, "tolerances");
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    check_keys(o, {"out_dir", "cache_dir"}, "output");
    read(o, "out_dir", c.out_dir, "output");
    read(o, "cache_dir", c.cache_dir, "output");
  }
  return c;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::move(base));
}

json to_json(const RunConfig& c) {
  const auto& g = c.grids;
  const auto& t = c.tol;
  return {
      {"schema_version", c.schema_version},
      {"suite", c.suite},
      {"params", {{"d", c.d}, {"p", c.p.str()}, {"delta", c.delta}, {"gamma", c.gamma}}},
      {"grids",
       {{"eps_k", g.eps_k},
        {"x_over_xc", g.x_over_xc},
        {"truncation_eps_k", g.truncation_eps_k},
        {"far_eps_k", g.far_eps_k},
        {"ks", g.ks},
        {"welldef_ks", g.welldef_ks},
        {"chirp_ks", g.chirp_ks},
        {"chirp_p", g.chirp_p},
        {"t", g.t},
        {"nu", g.nu},
        {"subordination_delta", g.subordination_delta},
        {"subordination_x", g.subordination_x},
        {"per_interval", g.per_interval},
        {"random_x", g.random_x},
        {"trajectory_J", g.trajectory_J},
        {"blowup_numerical", g.blowup_numerical},
        {"blowup_J", g.blowup_J}}},
      {"tolerances",
       {{"lp_slope", t.lp_slope},
        {"divergence_slope", t.divergence_slope},
        {"control_slope", t.control_slope},
        {"plancherel", t.plancherel},
        {"far_ratio", t.far_ratio},
        {"regime_factor", t.regime_factor},
        {"reconstruction", t.reconstruction},
        {"subordination", t.subordination},
        {"weyl_constant_spread", t.weyl_constant_spread},
        {"route", t.route},
        {"cross", t.cross},
        {"fraction", t.fraction},
        {"uniformity", t.uniformity},
        {"cache", t.cache}}},
      {"output", {{"out_dir", c.out_dir}, {"cache_dir", c.cache_dir}}},
      {"jobs", c.jobs},
      {"seed", c.seed},
      {"no_cache", c.no_cache},
  };
}

}  // namespace brlab::cli
