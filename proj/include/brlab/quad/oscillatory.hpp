#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "brlab/quad/quad_result.hpp"

namespace brlab {

using ComplexFn = std::function<std::complex<double>(double)>;
using RealFn = std::function<double(double)>;

struct OscillatoryOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int legendre_order = 16;
  int max_panels = 20000;
  int scan_points = 512;
  // total phase excursion below which plain adaptive quadrature is used
  double slow_phase = 8.0;
  bool throw_on_failure = true;
};

// j_0(w), ..., j_{n-1}(w) for real w
std::vector<double> spherical_bessel_sequence(int n, double w);

// Zeros of dphi in (a, b) located by a sign-change scan and bisection.
std::vector<double> stationary_points(const RealFn& dphi, double a, double b, int scan_points);

// int_a^b amp(t) e^{i phi(t)} dt
QuadResult integrate_oscillatory(const ComplexFn& amp, const RealFn& phi, const RealFn& dphi,
                                 double a, double b, const OscillatoryOptions& opt = {});

}  // namespace brlab
