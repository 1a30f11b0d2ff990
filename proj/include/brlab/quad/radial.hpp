#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "brlab/quad/adaptive.hpp"
#include "brlab/quad/bessel.hpp"
#include "brlab/quad/oscillatory.hpp"
#include "brlab/quad/quad_result.hpp"

namespace brlab {

// |S^{d-1}|
double sphere_area(int d);

// Natural cubic spline through complex samples on a strictly increasing grid.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<std::complex<double>> y);
  std::complex<double> operator()(double t) const;
  const std::vector<double>& x() const { return x_; }
  const std::vector<std::complex<double>>& y() const { return y_; }

 private:
  std::vector<double> x_;
  std::vector<std::complex<double>> y_, m_;
};

// Radial function g(|x|) on R^d. Outside [r_lo, r_hi] |g| < tail_tol.
// An optional carrier splits g = envelope * e^{i theta(r)} so that
// transforms can treat theta as part of the oscillatory phase.
class RadialProfile {
 public:
  struct Window {
    double r_lo = 0;
    double r_hi = 0;
    double tail_tol = 0;
  };
  struct Carrier {
    RealFn theta, dtheta;
  };
  // Known transform rho -> (F_d g)(rho), negligible outside [rho_lo, rho_hi].
  struct Spectrum {
    ComplexFn F;
    double rho_lo = 0;
    double rho_hi = 0;
    double bandwidth = 0;
    std::vector<double> breakpoints;
  };

  RadialProfile(int d, ComplexFn g, Window w, double bandwidth = 0.0,
                std::vector<double> breakpoints = {});
  // g = envelope(r) e^{i theta(r)}
  RadialProfile(int d, ComplexFn envelope, Carrier carrier, Window w, double envelope_bandwidth,
                std::vector<double> breakpoints = {});
  static RadialProfile from_samples(int d, std::vector<double> r, std::vector<std::complex<double>> g,
                                    double tail_tol, double bandwidth = 0.0);

  std::complex<double> operator()(double r) const;
  std::complex<double> envelope(double r) const;  // equals operator() without a carrier

  int dim() const { return d_; }
  const Window& window() const { return w_; }
  double bandwidth() const { return bandwidth_; }
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::optional<Carrier>& carrier() const { return carrier_; }
  bool sampled() const { return spline_ != nullptr; }
  const CubicSpline* spline() const { return spline_.get(); }
  bool tail_certified() const { return std::isfinite(w_.tail_tol) && w_.tail_tol >= 0; }

  const std::optional<Spectrum>& spectrum() const { return spectrum_; }
  RadialProfile with_spectrum(Spectrum s) const {
    RadialProfile p = *this;
    p.spectrum_ = std::move(s);
    return p;
  }

 private:
  int d_;
  ComplexFn g_;
  Window w_;
  double bandwidth_;
  std::vector<double> breaks_;
  std::optional<Carrier> carrier_;
  std::optional<Spectrum> spectrum_;
  std::shared_ptr<const CubicSpline> spline_;
};

struct RadialOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  // rho * r above which the Hankel-expansion Filon route is used
  double filon_threshold = 30.0;
  bool allow_filon = true;
  int max_intervals = 200000;
};

// (F_d g)(rho) = int_{R^d} g(|x|) e^{-i x.xi} dx at |xi| = rho
QuadResult radial_fourier(const RadialProfile& g, int d, double rho, const RadialOptions& opt = {});

// Fixed composite Gauss-Kronrod nodes over the profile window, sampled once
// and reused for many rho.
class HankelPlan {
 public:
  HankelPlan(const RadialProfile& g, int d, double rho_max, double phase_per_panel = 2.0);
  QuadResult transform(double rho) const;
  std::size_t nodes() const { return r_.size(); }
  double rho_max() const { return rho_max_; }

 private:
  int d_;
  double rho_max_;
  double tail_err_;
  std::vector<double> r_, wk_, wg_;  // wg_ zero at Kronrod-only nodes
  std::vector<std::complex<double>> gw_;  // g(r) r^{d/2}
  std::vector<std::complex<double>> g0_;  // g(r) r^{d-1}
  std::size_t panels_;
};

// Extended-precision transform of a real profile on [0, r_hi].
template <class Real, class G>
BasicQuadResult<Real> radial_fourier_extended(G&& g, int d, Real rho, Real r_hi, Real rel_tol,
                                              Real abs_tol = 0) {
  using std::pow;
  const Real pi = boost::math::constants::pi<Real>();
  const Real two_pi = 2 * pi;
  if (rho == 0) {
    // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
    const Real area = 2 * pow(pi, Real(d) / 2) / boost::math::tgamma(Real(d) / 2);
    auto f = [&](Real r) { return g(r) * pow(r, d - 1); };
    auto res = integrate_adaptive_gl<Real>(f, Real(0), r_hi, rel_tol, abs_tol / area);
    res.value *= area;
    res.err_estimate *= static_cast<double>(area);
    return res;
  }
  const Real nu = Real(d - 2) / 2;
  const Real pref = (d == 1) ? Real(2) : pow(two_pi, Real(d) / 2) * pow(rho, -nu);
  auto f = [&](Real r) -> Real {
    using std::cos;
    using std::sqrt;
    if (d == 1) return g(r) * cos(r * rho);
    return g(r) * bessel_j<Real>(nu, r * rho) * pow(r, Real(d) / 2);
  };
  auto res = integrate_adaptive_gl<Real>(f, Real(0), r_hi, rel_tol, abs_tol / pref);
  res.value *= pref;
  res.err_estimate *= static_cast<double>(pref);
  return res;
}

}  // namespace brlab
