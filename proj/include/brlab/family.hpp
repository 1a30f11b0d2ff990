#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "brlab/fit.hpp"
#include "brlab/params.hpp"
#include "brlab/profiles.hpp"
#include "brlab/quad/chebyshev.hpp"
#include "brlab/quad/oscillatory.hpp"
#include "brlab/quad/radial.hpp"

namespace brlab {

struct FamilyOptions {
  RadialOptions hankel{};
  OscillatoryOptions oscillatory{};
  // annuli of the L^p norm, relative to x_c
  double annulus_inner = 1e-2;
  double annulus_outer = 1e2;
  double lp_rel_tol = 1e-7;
};

// f_eps with F_eps(xi) = psi((N - |xi|^2) / (eps N)) and f_eps = (2 pi)^-d F(F_eps).
// Copies share one immutable state (and one norm cache).
class FamilyMember {
 public:
  FamilyMember(const Params& params, std::shared_ptr<const SchwartzProfile> psi, FamilyOptions opt = {});

  const Params& params() const;
  const SchwartzProfile& psi() const;
  const FamilyOptions& options() const;
  double epsilon() const { return params().epsilon(); }
  double N() const { return params().N(); }
  double x_c() const { return params().x_c(); }
  int dim() const { return params().d(); }

  std::complex<double> freq(double r) const;
  // F_eps as a radial profile in the frequency variable
  const RadialProfile& freq_profile() const;
  // f_eps evaluated by the oscillatory route, with F_eps attached as its spectrum
  const RadialProfile& spatial_profile() const;

  QuadResult spatial_hankel(double x) const;
  QuadResult oscillatory(double x) const;
  // the representation with the one-sided psi_hat, before the even convention is applied
  QuadResult oscillatory_one_sided(double x) const;
  // same integral in quadruple precision; for values far below the double cancellation floor
  QuadResult oscillatory_extended(double x) const;

  // f_eps from a Chebyshev table of the demodulated value f_one(x) e^{-i sqrt(N) x}, which
  // varies on the scale x_c sqrt(eps). The table reaches at least 8 x_c and continues until the
  // integration by parts bound is negligible; the oscillatory route is used beyond it.
  std::complex<double> tabulated(double x) const;
  const ChebyshevTable& envelope_table() const;

  // Upper bound for |f_eps(x)| from M-fold integration by parts of the oscillatory
  // representation, minimized over M <= 24; only M = 0 when the phase is stationary.
  double ibp_bound(double x) const;
  // min(|value| + err, ibp bound)
  double magnitude_upper(double x) const;
  // |value| - err of the best resolved route (quadruple precision when needed), at least 0
  double magnitude_lower(double x) const;

  struct Peak {
    double x = 0;
    double value = 0;
  };
  Peak peak() const;

  double lp_norm(const LebesgueExponent& p) const;

  // Computed tables and values, for caching across runs. `seed` must precede any use of the
  // member that would build them; the envelope table is ignored once built.
  struct Snapshot {
    std::optional<ChebyshevTable> envelope;
    std::map<std::string, double> norms;  // keyed by LebesgueExponent::str()
    std::optional<Peak> peak;
  };
  Snapshot snapshot() const;
  void seed(const Snapshot& s) const;

  // frequency-side value of ||f_eps||_2
  double plancherel_l2() const;
  // L^p norm restricted to [inner x_c, outer x_c]
  double lp_norm_annulus(const LebesgueExponent& p, double inner, double outer) const;

 private:
  struct State;
  explicit FamilyMember(std::shared_ptr<State> s);
  std::shared_ptr<State> s_;
};

// operation-style entry points
std::complex<double> f_eps_freq(const FamilyMember& m, double r);
QuadResult f_eps_spatial_hankel(const FamilyMember& m, double x_mag);
QuadResult f_eps_oscillatory(const FamilyMember& m, double x_mag);
double lp_norm(const FamilyMember& m, const LebesgueExponent& p);

struct DecayRow {
  double x = 0;
  Regime regime = Regime::Critical;
  double value = 0;       // |f_eps(x)|, or an upper bound when `is_bound`
  bool is_bound = false;  // value below the resolvable level, reported as an upper bound
  double shape = 0;       // the regime's bound without its constant
  double constant = 0;    // fitted constant of that regime
  bool violation = false;
};

struct DecayReport {
  int M = 2;
  double ratio_threshold = 4;
  double c_near = 0, c_critical = 0, c_far = 0;
  std::vector<DecayRow> rows;
  bool ok() const;
};

// Bound shapes: near eps^M (N eps)^{d/2}, critical eps^{1/2} (N eps)^{d/2},
// far (N eps |x|^2)^{-M} (N eps)^{d/2}. When `constants` is empty they are fitted
// as the largest ratio on the grid; otherwise rows above them are violations.
DecayReport decay_report(const FamilyMember& m, int M, const std::vector<double>& xs,
                         double ratio_threshold = 4.0, const DecayReport* constants = nullptr);

// predicted slope of log ||f_eps||_p against log eps
double lp_predicted_slope(int d, const LebesgueExponent& p, double gamma);
ExponentFit lp_scaling_fit(const std::vector<double>& eps, const LebesgueExponent& p, double gamma, int d,
                           std::shared_ptr<const SchwartzProfile> psi, FamilyOptions opt = {},
                           std::vector<double>* norms = nullptr);

// Members f_j = f_{eps_j} of the schedule, sharing one psi.
std::vector<FamilyMember> schedule_members(int J, int d, const LebesgueExponent& p, double delta, double gamma,
                                           std::shared_ptr<const SchwartzProfile> psi, FamilyOptions opt = {},
                                           int ceiling = kDefaultPrecisionCeiling);

struct FrakPartial {
  std::complex<double> value;
  double err = 0;
  std::vector<std::complex<double>> terms;  // 2^-j f_j(x) / ||f_j||_p
  std::vector<double> term_bounds;          // 2^-j sup|f_j| / ||f_j||_p
  double tail_bound = 0;                    // bound on the omitted terms j > J
};

// sum_{j <= J} 2^-j f_j(x) / ||f_j||_p
FrakPartial frak_F_partial(const std::vector<FamilyMember>& members, int J, const LebesgueExponent& p,
                           double x_mag);
FrakPartial frak_F_partial(int J, const LebesgueExponent& p, double gamma, int d, double x_mag,
                           std::shared_ptr<const SchwartzProfile> psi, int ceiling = kDefaultPrecisionCeiling);

}  // namespace brlab
