#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "brlab/fit.hpp"
#include "brlab/jet.hpp"
#include "brlab/multiplier.hpp"
#include "brlab/params.hpp"
#include "brlab/profiles.hpp"

namespace brlab {

inline constexpr int kWeylJetOrder = 8;
using WeylJet = Jet<kWeylJetOrder>;

// Smooth function on the real line with compact support [lo, hi], evaluated with derivatives.
class CompactProfile {
 public:
  using JetFn = std::function<WeylJet(const WeylJet&)>;

  CompactProfile(JetFn f, double lo, double hi, std::string name);
  // eval_bump(s, (t - center) / scale)
  static CompactProfile bump(const BumpSpec& s, double center = 0, double scale = 1, std::string name = "bump");

  double operator()(double t) const;
  // n-th derivative, n <= kWeylJetOrder
  double derivative(double t, int n) const;
  WeylJet jet(double t) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::string& name() const { return name_; }

 private:
  JetFn f_;
  double lo_, hi_;
  std::string name_;
};

// |x|^nu [x < 0] / Gamma(nu + 1) for nu > -1
double chi_minus(double nu, double x);

// Psi^{(nu)} realizing (-d/dt)^nu:
//   nu < 0          Gamma(-nu)^-1 int_0^inf u^{-nu-1} Psi(t+u) du
//   nu integer      (-1)^nu Psi^{(nu)}(t)
//   otherwise       (-1)^{nu0} Gamma(nu0-nu)^-1 int_0^inf u^{nu0-nu-1} Psi^{(nu0)}(t+u) du, nu0 = floor(nu)+1
// so that Psi = Psi^{(nu)} * chi_-^{nu-1}. Zero for t >= hi.
QuadResult weyl_derivative(const CompactProfile& psi, double nu, double t);

// max over ts of |int_0^inf Psi^{(nu)}(t+u) u^{nu-1} / Gamma(nu) du - Psi(t)|
double reconstruction_check(const CompactProfile& psi, double nu, const std::vector<double>& ts);

// int_0^inf t^power |Psi^{(nu)}(t)| dt
double weyl_weighted_mass(const CompactProfile& psi, double nu, double power);

// Psi_j(t) = eta((N_j eps_j)^-1 (t - N_j)) along the schedule
CompactProfile psi_j_profile(int j, double gamma, const BumpSpec& eta = eta_spec(),
                             int ceiling = kDefaultPrecisionCeiling);
double psi_j_window(int j, double gamma, double t, int ceiling = kDefaultPrecisionCeiling);

struct WeylBoundReport {
  int j = 0;
  double N = 0, eps = 0, delta = 0;
  // smallest C with |Psi_j^{(delta+1)}(t)| <= C (N eps)^{-delta-1} (1 + |N - t| / (N eps))^{-delta} on t <= N + 1
  double constant = 0;
  // largest |Psi_j^{(delta+1)}| on (N + 1, inf), where the bound requires zero
  double beyond_support = 0;
  std::vector<double> ts, values;
};

WeylBoundReport psi_j_weyl_bound_check(int j, double gamma, double delta, int grid = 800,
                                       int ceiling = kDefaultPrecisionCeiling);

struct SubordinationResult {
  std::complex<double> lhs, rhs;
  double lhs_err = 0, rhs_err = 0;
  double rel_diff() const { return std::abs(lhs - rhs) / std::abs(lhs); }
};

// lhs = Psi(-Delta) f (x); rhs = Gamma(delta+1)^-1 int_0^T t^delta Psi^{(delta+1)}(t) S_{sqrt t}^delta f(x) dt
SubordinationResult subordination_check(const RadialProfile& f, const CompactProfile& psi, double delta, int d,
                                        double x_mag, const MultiplierOptions& opt = {});

}  // namespace brlab
