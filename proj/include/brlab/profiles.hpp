#pragma once

#include <complex>
#include <string>
#include <vector>

#include "brlab/error.hpp"
#include "brlab/jet.hpp"

namespace brlab {

// ramp g(u) = exp(-sharpness/u) for u > 0, else 0
template <class T>
T ramp(const T& u, double sharpness) {
  if (!(value_of(u) > 0)) return T(0.0);
  using std::exp;
  return exp(-sharpness / u);
}

// 0 for u <= 0, 1 for u >= 1, C-infinity in between
template <class T>
T unit_step(const T& u, double sharpness = 1.0) {
  const double u0 = value_of(u);
  if (u0 <= 0) return T(0.0);
  if (u0 >= 1) return T(1.0);
  T g0 = ramp(u, sharpness);
  T g1 = ramp(1.0 - u, sharpness);
  return g0 / (g0 + g1);
}

double smoothstep(double a, double b, double x, double sharpness = 1.0);

struct BumpSpec {
  double a, b;  // open support (a, b)
  double c, e;  // plateau [c, e]; c > e means no plateau
  double sharpness = 1.0;

  void validate() const;
  bool has_plateau() const { return c <= e; }
};

template <class T>
T eval_bump(const BumpSpec& s, const T& t) {
  const double t0 = value_of(t);
  if (t0 <= s.a || t0 >= s.b) return T(0.0);
  const double lo = s.has_plateau() ? s.c : 0.5 * (s.a + s.b);
  const double hi = s.has_plateau() ? s.e : lo;
  if (t0 <= lo) {
    if (t0 == lo) return T(1.0);
    return unit_step((t - s.a) / (lo - s.a), s.sharpness);
  }
  if (t0 < hi) return T(1.0);
  return 1.0 - unit_step((t - hi) / (s.b - hi), s.sharpness);
}

// cutoff whose inverse transform is psi: supp (1/4, 2), plateau [1/2, 1]
BumpSpec psi_hat_spec(double sharpness = 1.0);
// spectral window profile: supp (-2, 2), plateau [-1, 1]
BumpSpec eta_spec(double sharpness = 1.0);
// ball-type cutoff of |x|: 1 on B(0,1), 0 outside B(0,2)
BumpSpec ball_cutoff_spec(double sharpness = 1.0);

// chi(r) = theta(r) - theta(r/2), theta a smooth step from 1/2 to 1,
// so supp chi = [1/2, 2] and sum_n chi(2^-n r) = 1 for r > 0.
class DyadicPartition {
 public:
  explicit DyadicPartition(int cutoff_index = 10, double sharpness = 1.0);

  double theta(double r) const;
  double chi(double r) const;
  template <int K>
  Jet<K> chi(const Jet<K>& r) const {
    return theta_t(r) - theta_t(r * 0.5);
  }
  double eval(double r, int n) const;  // chi(2^-n r)
  double sum(double r) const;          // sum over all n with nonzero terms
  // chi_circ(r) = sum_{n < cutoff_index} chi(2^-n r) = 1 - theta(2^-cutoff r)
  double chi_circ(double r) const;
  int cutoff_index() const { return cutoff_; }

 private:
  template <class T>
  T theta_t(const T& r) const {
    return unit_step((r - 0.5) * 2.0, sharpness_);
  }
  int cutoff_;
  double sharpness_;
};

enum class PsiConvention { OneSided, Even };
const char* to_string(PsiConvention c);

// psi(s) = (2 pi)^-1 int psi_hat(t) e^{ist} dt, stored as piecewise Chebyshev
// interpolants of an exact trapezoid sum over the compact support of psi_hat.
class SchwartzProfile {
 public:
  struct Options {
    double s_max = 2000.0;
    double panel_width = 2.0;
    int degree = 24;
  };

  explicit SchwartzProfile(PsiConvention conv = PsiConvention::Even, BumpSpec hat = psi_hat_spec());
  SchwartzProfile(PsiConvention conv, BumpSpec hat, Options opt);

  std::complex<double> operator()(double s) const;
  // direct trapezoid evaluation, bypassing the table
  std::complex<double> direct(double s) const;

  PsiConvention convention() const { return conv_; }
  const BumpSpec& hat() const { return hat_; }
  double s_max() const { return opt_.s_max; }
  double tail_bound() const { return tail_bound_; }
  double interpolation_error() const { return interp_err_; }
  double hat_integral() const;  // int psi_hat over the support

  // identifies the construction for cache keys
  std::string fingerprint() const;

  // raw table access for serialization
  const std::vector<double>& table() const { return table_; }
  static SchwartzProfile from_table(PsiConvention conv, BumpSpec hat, Options opt,
                                    std::vector<double> table, double tail_bound,
                                    double interp_err);

 private:
  struct Raw {};
  SchwartzProfile(Raw, PsiConvention conv, BumpSpec hat, Options opt);
  void build_nodes();
  std::complex<double> one_sided_direct(double s) const;

  PsiConvention conv_;
  BumpSpec hat_;
  Options opt_;
  double h_ = 0;
  std::vector<double> t_nodes_, w_nodes_;  // trapezoid nodes and weights * psi_hat
  std::vector<double> table_;              // per panel: (degree+1) re, (degree+1) im
  double tail_bound_ = 0;
  double interp_err_ = 0;
};

}  // namespace brlab
