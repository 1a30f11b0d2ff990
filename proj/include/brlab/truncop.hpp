#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "brlab/family.hpp"
#include "brlab/fit.hpp"
#include "brlab/multiplier.hpp"
#include "brlab/profiles.hpp"

namespace brlab {

// Radial cutoff phi, applied as phi(2^-k |y|).
class Cutoff {
 public:
  enum class Kind { Ball, Annular };

  // eval_bump of a spec whose plateau contains [0, 1]
  static Cutoff ball(BumpSpec s = ball_cutoff_spec());
  // 1 - theta(r / 2) of the partition: 1 on B(0,1), 0 outside B(0,2)
  static Cutoff ball(const DyadicPartition& p);
  // chi of the partition, supported in [1/2, 2]
  static Cutoff annular(const DyadicPartition& p);
  // eval_bump of a spec with support in (0, inf)
  static Cutoff annular(BumpSpec s);

  Kind kind() const { return kind_; }
  double operator()(double r) const { return phi_(r); }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  const std::string& name() const { return name_; }

 private:
  Cutoff(Kind kind, std::function<double(double)> phi, double lo, double hi, std::string name);
  Kind kind_;
  std::function<double(double)> phi_;
  double lo_, hi_;
  std::string name_;
};

inline constexpr int kMaxTruncationIndex = 40;

struct TruncationSpec {
  int k = 0;
  Cutoff cutoff = Cutoff::ball();
  double t = 1;
  double delta = 0;

  void validate() const;
  double scale() const { return std::ldexp(1.0, k); }
  TruncationSpec with_k(int kk) const {
    TruncationSpec s = *this;
    s.k = kk;
    return s;
  }
};

// K_t^delta(r) from its closed form in J_{d/2+delta}
double br_kernel_closed(int d, double delta, double t, double r);
// bound on |K_t^delta| at radius r
double br_kernel_envelope(int d, double delta, double t, double r);

// S_t^delta[k, phi] f(x), frequency side: br_mean of the product phi(2^-k .) f
QuadResult truncated_mean(const TruncationSpec& s, const RadialProfile& f, double x_mag,
                          const MultiplierOptions& opt = {});

// S_t^delta[k, phi] f(0) = (2 pi)^-d |S^{d-1}| int K_t(r) phi(2^-k r) f(r) r^{d-1} dr
QuadResult truncated_mean_origin(const TruncationSpec& s, const RadialProfile& f);
// same for f_eps, with values from the envelope table and an integration by parts tail bound
QuadResult truncated_mean_origin(const TruncationSpec& s, const FamilyMember& m);
// S_t^delta[k, phi] f_eps(x): origin route at x = 0, frequency route otherwise
QuadResult truncated_mean(const TruncationSpec& s, const FamilyMember& m, double x_mag);

// partial sum sum_{j <= J} 2^-j f_j / ||f_j||_p of the normalized series
QuadResult truncated_mean(const TruncationSpec& s, const std::vector<FamilyMember>& members,
                          const LebesgueExponent& p, double x_mag);

struct RegimeRow {
  int k = 0;
  Regime regime = Regime::Critical;
  std::complex<double> value;
  double err = 0;
  bool is_bound = false;  // magnitude is |value| + err, the value is not resolved
  double magnitude = 0;
  double shape = 0;  // bound without its constant
  bool fit_row = false;
  double constant = 0;  // constant of the row's regime
  bool violation = false;
};

struct RegimeReport {
  int M = 2;
  double factor = 4;
  double c_near = 0, c_critical = 0, c_far = 0;
  // max / min of magnitude / shape over resolved rows of each regime
  double spread_near = 0, spread_critical = 0, spread_far = 0;
  std::vector<RegimeRow> rows;

  bool ok() const;
  bool covers_all_regimes() const;
};

// |S_t^delta[k, chi] f_eps(x)| against the three regime bounds
//   near      eps^M (N eps)^{d/2} 2^{kd}
//   critical  N^{-M/2} (N eps)^{d/2} 2^{kd}
//   far       (N eps 2^{2k})^{-M} (N eps)^{d/2} 2^{kd}
// with regimes from 2^k relative to x_c. Constants are fitted on every other k of each
// regime; a row violates when its magnitude exceeds factor * constant * shape.
RegimeReport regime_bound_check(const TruncationSpec& annular, const FamilyMember& m, int M,
                                const std::vector<int>& ks, double x_mag = 0, double factor = 4,
                                double ratio_threshold = 4);

struct CutoffSequence {
  std::string cutoff;
  std::vector<std::complex<double>> values;
  std::vector<double> errs;
  std::complex<double> limit;
  double limit_err = 0;
  // log |S_{k+1} - S_k| = c - rate * k log 2 over the resolved differences
  ExponentFit cauchy_fit;
  double rate = 0;
  int resolved_differences = 0;
};

struct WelldefReport {
  std::vector<int> ks;
  CutoffSequence a, b;
  double limit_difference = 0;
  double combined_err = 0;
  bool stabilized = false;       // positive Cauchy rates on both sequences
  bool cutoff_independent = false;
};

// S_t^delta[k, phi_a] and S_t^delta[k, phi_b] of the normalized partial sum over k
WelldefReport welldef_probe(const std::vector<FamilyMember>& members, const LebesgueExponent& p,
                            double delta, double t, double x_mag, const std::vector<int>& ks,
                            const Cutoff& phi_a, const Cutoff& phi_b);

// (1 + r^2)^{-d/(2p)} (log(1 + r^2))^{-2/p}
double typical_envelope(int d, double p, double r);
// F(r) e^{i r^2/2} with F = typical_envelope, or F alone when `chirped` is false
RadialProfile chirp_profile(int d, double p, bool chirped, double r_hi);

struct ChirpRow {
  int k = 0;
  std::complex<double> value;
  double err = 0;
  bool resolved = false;
  double upper() const { return std::abs(value) + err; }
  double lower() const { return resolved ? std::abs(value) - err : 0.0; }
};

struct ChirpReport {
  bool chirped = true;
  std::vector<ChirpRow> rows;
  // strictly decreasing while resolved, and no later value provably above an earlier one
  bool monotone() const;
  // monotone, and the last upper bound is below `drop` times the first lower bound
  bool decays(double drop = 1e-2) const;
};

ChirpReport chirp_truncation_decay(const RadialProfile& f, double delta, double t, const std::vector<int>& ks,
                                   const Cutoff& annular, double x_mag = 0);

struct AnnularSumCheck {
  std::complex<double> lhs;  // S[K', ball] f - S(chi_circ f)
  std::complex<double> rhs;  // sum_{b <= n <= K'} S[n, chi] f
  double err = 0;
  double difference() const { return std::abs(lhs - rhs); }
};

// chi_circ + sum_{n=b}^{K'} chi(2^-n .) = 1 - theta(2^{-K'-1} .), the ball cutoff of the partition
AnnularSumCheck annular_sum_check(const DyadicPartition& p, const FamilyMember& m, double delta, double t,
                                  int k_top, double x_mag = 0);
AnnularSumCheck annular_sum_check(const DyadicPartition& p, const RadialProfile& f, double delta, double t,
                                  int k_top, double x_mag = 0);

}  // namespace brlab
