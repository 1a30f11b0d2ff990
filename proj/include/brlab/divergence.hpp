#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "brlab/family.hpp"
#include "brlab/fit.hpp"
#include "brlab/multiplier.hpp"
#include "brlab/params.hpp"
#include "brlab/weyl.hpp"

namespace brlab {

enum class BesselMode { Exact, Leading };

// Psi(s) = eta((N eps)^-1 (s - N)) with the member's N and eps
CompactProfile divergence_window(const FamilyMember& m, const BumpSpec& eta = eta_spec());

// Psi(-Delta) f_eps (x) as the one-dimensional integral
//   (2 pi)^{-d/2} |x|^{-(d-2)/2} int Psi(r^2) F(r) J_{(d-2)/2}(r |x|) r^{d/2} dr
// over r in [sqrt N (1 - 4 eps), sqrt N (1 + 4 eps)], with J exact or replaced by
// sqrt(2 / (pi z)) cos(z - (d-1) pi / 4).
QuadResult spectral_apply(const FamilyMember& m, double x_mag, BesselMode mode);
QuadResult spectral_apply(int j, double gamma, int d, double x_mag, BesselMode mode,
                          std::shared_ptr<const SchwartzProfile> psi, int ceiling = kDefaultPrecisionCeiling);

enum class MultiplierSource {
  KnownSpectrum,  // F_eps as the transform of f_eps
  SpatialValues,  // forward transform of tabulated values of f_eps
};

// Psi_w(-Delta) f (x) through apply_multiplier, Psi_w the window of `window`
QuadResult window_apply(const FamilyMember& window, const FamilyMember& f, double x_mag, MultiplierSource src,
                        const MultiplierOptions& opt = {});

// A = {1/2 <= |x| <= 2 : cos(sqrt N |x| - (d-1) pi / 4) > 1/2}
struct AnnularSet {
  double N = 0;
  int d = 2;
  std::vector<std::pair<double, double>> intervals;  // in |x|
  double measure = 0;                               // d-dimensional measure
  double annulus_measure = 0;                       // measure of 1/2 <= |x| <= 2

  double fraction() const { return measure / annulus_measure; }
  bool contains(double x_mag) const;
  double cosine(double x_mag) const;
  // n points in each interval, restricted to cos > 0.55
  std::vector<double> samples(int n) const;
};

AnnularSet set_A(double N, int d);
AnnularSet set_A(int j, double gamma, int d, int ceiling = kDefaultPrecisionCeiling);

struct DivergenceRatio {
  double x = 0;
  double value = 0;      // |Psi(-Delta) f_eps (x)|
  double value_err = 0;
  double norm = 0;       // ||f_eps||_p
  double ratio = 0;      // value / norm
  double predicted = 0;  // (eps N^{1/2})^{-delta(d,p)}
};

// requires x in A; throws ValidationError otherwise
DivergenceRatio divergence_ratio(const FamilyMember& m, const LebesgueExponent& p, double x_mag);
// largest ratio over `per_interval` samples in each interval of A
DivergenceRatio max_divergence_ratio(const FamilyMember& m, const LebesgueExponent& p, int per_interval = 16);

struct DivergenceSweep {
  int d = 2;
  LebesgueExponent p = LebesgueExponent::infinity();
  double gamma = 0;
  double expected = 0;  // -delta(d,p)
  std::vector<double> eps;
  std::vector<DivergenceRatio> rows;
  ExponentFit fit;  // log ratio against log(eps N^{1/2})
  bool within(double rel_tol) const;
};

DivergenceSweep exponent_sweep(const std::vector<double>& eps, double gamma, int d, const LebesgueExponent& p,
                               std::shared_ptr<const SchwartzProfile> psi, FamilyOptions opt = {},
                               int per_interval = 16);
// same over prebuilt members sharing d and gamma
DivergenceSweep exponent_sweep(const std::vector<FamilyMember>& members, const LebesgueExponent& p,
                               int per_interval = 16);

struct LeadingErrorRow {
  double N = 0, eps = 0;
  double x = 0;      // where the error is largest
  double error = 0;  // max over samples of A of |exact - leading|
  double main = 0;   // max over samples of A of |leading|
  double rel() const { return error / main; }
};

// Bessel remainder of spectral_apply relative to the main term, over samples of A
LeadingErrorRow leading_error(const FamilyMember& m, int per_interval = 16);

struct CrossTerm {
  int j = 0, k = 0;
  double x = 0;
  double cross = 0;     // |Psi_j(-Delta) f_k (x)|
  double diagonal = 0;  // |Psi_j(-Delta) f_j (x)|
  double ratio() const { return cross / diagonal; }
};

CrossTerm cross_term(int j, int k, double gamma, int d, double x_mag, std::shared_ptr<const SchwartzProfile> psi,
                     int ceiling = kDefaultPrecisionCeiling);

struct BlowupTrajectory {
  double sigma = 0;
  std::vector<double> terms;  // T_j = 2^-j eps_j^sigma, j = 0..J
  // smallest j0 with T_{j+1} > T_j for all j >= j0, from 2^j > -1/sigma
  int turning_point = 0;
  // T_{j+1} > T_j exactly for j >= turning_point, and T_{j+1} <= T_j before it
  bool matches_closed_form() const;
};

// closed form for j = 0..J, J <= 16; throws ValidationError when sigma >= 0, quoting gamma_max
BlowupTrajectory blowup_trajectory(int d, const LebesgueExponent& p, double delta, double gamma, int J);

struct BlowupRow {
  int j = 0;
  double x = 0;
  std::complex<double> value;  // Psi_j(-Delta) of the normalized partial sum at x
  double scaled = 0;           // eps_j^delta |value|
  double diagonal_share = 0;   // |diagonal term| / sum of |terms|
};

// eps_j^delta |Psi_j(-Delta) sum_{k <= J} 2^-k f_k / ||f_k||_p (x)|, maximized over samples of A_j
std::vector<BlowupRow> blowup_numerical(int d, const LebesgueExponent& p, double delta, double gamma,
                                        const std::vector<int>& js, int J, std::shared_ptr<const SchwartzProfile> psi,
                                        int per_interval = 16, int ceiling = kDefaultPrecisionCeiling);

}  // namespace brlab
