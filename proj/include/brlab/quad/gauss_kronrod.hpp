#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace brlab::gk21 {

// 21-point Kronrod abscissae (positive half, descending) and weights; the
// odd entries 1,3,...,9 are the 10-point Gauss abscissae.
inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208280270230, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

}  // namespace brlab::gk21

namespace brlab {

// n-point Gauss-Legendre rule on [-1,1] by Newton iteration in the working type.
template <class Real>
std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  std::vector<Real> x(n), w(n);
  const Real pi = boost::math::constants::pi<Real>();
  const Real tol = 4 * std::numeric_limits<Real>::epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real z = cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = 1;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      Real dz = p1 / dp;
      z -= dz;
      if (abs(dz) < tol) break;
    }
    // final derivative at the converged node
    Real p0 = 1, p1 = z;
    for (int k = 2; k <= n; ++k) {
      Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = Real(2) / ((1 - z * z) * dp * dp);
  }
  return {x, w};
}

}  // namespace brlab
