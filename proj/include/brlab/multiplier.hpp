#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "brlab/quad/radial.hpp"

namespace brlab {

// Radial Fourier multiplier m(|xi|^2), negligible outside [s_lo, s_hi].
struct RadialMultiplier {
  enum class Smoothness { CompactSupport, SchwartzWindowed };

  std::function<std::complex<double>(double)> m;
  double s_lo = 0;
  double s_hi = 0;
  double tail_tol = 0;
  Smoothness smoothness = Smoothness::CompactSupport;
  // points in s where m is not smooth
  std::vector<double> breakpoints;
  // rate of variation of m(rho^2) in rho, for panel sizing
  double rho_bandwidth = 0;

  void validate() const;
};

// (1 - s/t^2)_+^delta
RadialMultiplier bochner_riesz_multiplier(double delta, double t);
// e^{-tau s}
RadialMultiplier heat_multiplier(double tau, double tail_tol = 1e-18);

struct MultiplierOptions {
  // phase advance per fixed panel in the outer (frequency) integral
  double phase_per_panel = 2.0;
  // geometric refinement levels toward multiplier breakpoints
  int grading_levels = 40;
  bool use_known_spectrum = true;
  // phase per panel of the forward transform plan when the spectrum is computed
  double plan_phase_per_panel = 2.0;
};

// m(-Delta) f at radii up to x_max, for a fixed multiplier and input.
class SpectralEngine {
 public:
  SpectralEngine(const RadialMultiplier& m, const RadialProfile& f, int d, double x_max,
                 const MultiplierOptions& opt = {});
  QuadResult at(double x_mag) const;
  std::size_t nodes() const { return rho_.size(); }
  bool used_known_spectrum() const { return known_; }

 private:
  int d_;
  double x_max_;
  bool known_ = false;
  std::vector<double> rho_, wk_, wg_;
  std::vector<std::size_t> panel_start_;
  std::vector<std::complex<double>> mf_;  // m(rho^2) (F_d f)(rho)
  double spec_err_ = 0;                  // integrated spectrum error
};

// m(-Delta) f (x) = int m(|xi|^2) f^(xi) e^{i x.xi} dxi
QuadResult apply_multiplier(const RadialMultiplier& m, const RadialProfile& f, int d, double x_mag,
                            const MultiplierOptions& opt = {});

// K_t(x) = t^d int (1 - |xi|^2)_+^delta e^{i t x.xi} dxi
QuadResult br_kernel(int d, double delta, double t, double x_mag);
// S_t^delta f(x)
QuadResult br_mean(const RadialProfile& f, int d, double delta, double t, double x_mag,
                   const MultiplierOptions& opt = {});

}  // namespace brlab
