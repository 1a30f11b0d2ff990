#pragma once

// Bessel functions of the first kind J_nu(x), real order nu >= 0, x >= 0,
// templated on the real type so the same code runs in double and float128.

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "brlab/error.hpp"

namespace brlab {

namespace bessel_detail {

template <class Real>
Real series(Real nu, Real x) {
  using std::abs;
  using std::pow;
  const Real half = x / 2, q = -half * half;
  Real term = pow(half, nu) / boost::math::tgamma(nu + 1);
  Real sum = term;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int k = 1; k < 500; ++k) {
    term *= q / (Real(k) * (Real(k) + nu));
    sum += term;
    if (abs(term) <= eps * abs(sum) && Real(k) > half) break;
  }
  return sum;
}

// Hankel expansion P, Q; returns false if the terms stop decreasing
// before reaching the working precision.
template <class Real>
bool hankel_pq(Real nu, Real x, Real& P, Real& Q) {
  using std::abs;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real mu = 4 * nu * nu;
  Real t = 1, prev = 2;
  P = 1;
  Q = 0;
  for (int k = 1; k < 400; ++k) {
    const Real odd = Real(2 * k - 1);
    t *= (mu - odd * odd) / (8 * Real(k) * x);
    const Real at = abs(t);
    if (t == 0) return true;  // half-integer order: expansion terminates
    if (at > prev && k > 2) return false;
    prev = at;
    switch (k % 4) {
      case 0: P += t; break;
      case 1: Q += t; break;
      case 2: P -= t; break;
      case 3: Q -= t; break;
    }
    if (at < eps / 4) return true;
  }
  return false;
}

template <class Real>
Real asymptotic(Real nu, Real x, Real P, Real Q) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Real pi = boost::math::constants::pi<Real>();
  const Real chi = x - (nu / 2 + Real(0.25)) * pi;
  return sqrt(2 / (pi * x)) * (P * cos(chi) - Q * sin(chi));
}

// Backward recurrence from a large starting order, normalised with
// (x/2)^mu = sum_m c_m J_{mu+2m}(x), mu the fractional part of nu.
template <class Real>
Real miller(Real nu, Real x) {
  using std::abs;
  using std::cbrt;
  using std::floor;
  using std::pow;
  const int n = static_cast<int>(floor(nu));
  const Real mu = nu - n;
  const int digits = std::numeric_limits<Real>::digits10;
  const double xd = static_cast<double>(x);
  const int K = static_cast<int>(std::ceil(std::max<double>(n, xd) + 1.5 * digits +
                                           (digits / 2.0) * std::cbrt(xd)));
  const Real big = pow(Real(2), std::numeric_limits<Real>::max_exponent / 4);
  Real y_next = 0, y = pow(Real(2), -std::numeric_limits<Real>::max_exponent / 8);
  Real y_nu = (K == n) ? y : Real(0);
  // c_m for m >= 1 via G_m = Gamma(mu+m)/m!
  std::vector<Real> c(K / 2 + 2);
  const Real g1 = boost::math::tgamma(mu + 1);
  c[0] = g1;
  Real G = g1;  // m = 1
  for (int m = 1; m < static_cast<int>(c.size()); ++m) {
    c[m] = (mu + 2 * m) * G;
    G *= (mu + m) / Real(m + 1);
  }
  Real sum = (K % 2 == 0) ? c[K / 2] * y : Real(0);
  for (int k = K; k >= 1; --k) {
    Real y_prev = 2 * (mu + k) / x * y - y_next;
    y_next = y;
    y = y_prev;
    const int order = k - 1;
    if (order == n) y_nu = y;
    if (order % 2 == 0) sum += c[order / 2] * y;
    if (abs(y) > big) {
      y /= big;
      y_next /= big;
      y_nu /= big;
      sum /= big;
    }
  }
  return y_nu * pow(x / 2, mu) / sum;
}

}  // namespace bessel_detail

template <class Real>
Real bessel_j(Real nu, Real x) {
  if (!(nu >= 0)) throw ValidationError("bessel_j: order must be >= 0");
  if (!(x >= 0)) throw ValidationError("bessel_j: argument must be >= 0");
  if (x == 0) return nu == 0 ? Real(1) : Real(0);
  const Real series_limit = 3 + nu / 2;
  if (x <= series_limit) return bessel_detail::series(nu, x);
  if (x >= Real(std::numeric_limits<Real>::digits10 * 1.3)) {
    Real P, Q;
    if (bessel_detail::hankel_pq(nu, x, P, Q)) return bessel_detail::asymptotic(nu, x, P, Q);
  }
  return bessel_detail::miller(nu, x);
}

inline double bessel_j(double nu, double x) { return bessel_j<double>(nu, x); }

// sqrt(2/(pi r)) cos(r - pi m/2 - pi/4)
double bessel_asymptotic_leading(double m, double r);

}  // namespace brlab
