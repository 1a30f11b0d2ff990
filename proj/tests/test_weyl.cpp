#include <cmath>
#include <numbers>
#include <vector>

#include "brlab/fit.hpp"
#include "brlab/quad/adaptive.hpp"
#include "brlab/weyl.hpp"
#include "doctest.h"

using namespace brlab;
using cd = std::complex<double>;

namespace {

CompactProfile default_bump() { return CompactProfile::bump(eta_spec(), 1.0, 0.25); }
// no plateau, asymmetric sharpness
CompactProfile second_bump() { return CompactProfile::bump({0.0, 1.0, 1.0, 0.0, 0.5}, 0.2, 1.3); }

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

}  // namespace

TEST_CASE("chi_minus values and domain") {
  CHECK(chi_minus(0, -2) == doctest::Approx(1.0));
  CHECK(chi_minus(1, -3) == doctest::Approx(3.0));
  CHECK(chi_minus(0.5, -1) == doctest::Approx(1.1283791670955126).epsilon(1e-14));
  CHECK(chi_minus(0.5, 0.5) == 0.0);
  CHECK_THROWS_AS(chi_minus(-1, -1), ValidationError);
  CHECK_THROWS_AS(chi_minus(-1.5, -1), ValidationError);
}

TEST_CASE("integer orders are signed classical derivatives") {
  const auto psi = default_bump();
  for (double t : {0.6, 0.8, 1.1, 1.4}) {
    CHECK(weyl_derivative(psi, 0, t).value.real() == psi(t));
    CHECK(weyl_derivative(psi, 1, t).value.real() == -psi.derivative(t, 1));
    CHECK(weyl_derivative(psi, 2, t).value.real() == psi.derivative(t, 2));
  }
}

TEST_CASE("half derivative matches an independent quadrature of the defining integral") {
  // (-1) Gamma(1/2)^-1 int_0^inf u^{-1/2} Psi'(t+u) du, with u = w^2 and a tight tolerance
  const auto psi = CompactProfile::bump(eta_spec(), 0.6, 0.2);
  const double t = 0.3;
  AdaptiveOptions opt;
  opt.rel_tol = 1e-14;
  std::vector<double> breaks;
  for (int i = 1; i < 64; ++i) breaks.push_back(std::sqrt(psi.hi() - t) * i / 64);
  const auto ref = integrate_adaptive([&](double w) { return 2 * psi.derivative(t + w * w, 1); }, 0.0,
                                      std::sqrt(psi.hi() - t), opt, breaks);
  const double expect = -ref.value / std::sqrt(std::numbers::pi);
  const double got = weyl_derivative(psi, 0.5, t).value.real();
  CHECK(std::abs(got - expect) <= 1e-8 * std::abs(expect));
}

TEST_CASE("fractional derivatives vanish above the support and compose") {
  const auto psi = default_bump();
  for (double nu : {-0.5, 0.3, 1.5, 2.5}) {
    CHECK(weyl_derivative(psi, nu, psi.hi()).value == cd(0));
    CHECK(weyl_derivative(psi, nu, psi.hi() + 0.1).value == cd(0));
  }
  // order -1 is the antiderivative from the right: int_t^inf Psi
  AdaptiveOptions opt;
  opt.rel_tol = 1e-13;
  const double t = 0.9;
  const auto ref = integrate_adaptive([&](double s) { return psi(s); }, t, psi.hi(), opt);
  CHECK(weyl_derivative(psi, -1, t).value.real() == doctest::Approx(ref.value).epsilon(1e-11));
}

TEST_CASE("reconstruction identity") {
  const double tol = 1e-6;
  for (const auto& psi : {default_bump(), second_bump()}) {
    const auto ts = grid(psi.lo() - 0.5, psi.hi() + 0.1, 41);
    CHECK(reconstruction_check(psi, 1.0, ts) < 1e-10);
    for (double nu : {0.3, 0.5, 1.5, 2.5}) {
      const double e = reconstruction_check(psi, nu, ts);
      INFO(psi.name(), " nu=", nu, " err=", e);
      CHECK(e < tol);
    }
  }
  CHECK_THROWS_AS(reconstruction_check(default_bump(), 0.0, {0.5}), ValidationError);
  CHECK_THROWS_AS(reconstruction_check(default_bump(), 3.5, {0.5}), ValidationError);
}

TEST_CASE("spectral windows psi_j") {
  for (int j : {0, 1, 2}) {
    const auto e = schedule(j, 0.2);
    CHECK(psi_j_window(j, 0.2, e.N) == 1.0);
    CHECK(psi_j_window(j, 0.2, e.N + 2.01 * e.N * e.epsilon) == 0.0);
    CHECK(psi_j_window(j, 0.2, e.N - 2.01 * e.N * e.epsilon) == 0.0);
    const auto p = psi_j_profile(j, 0.2);
    CHECK(p(e.N + 0.3 * e.N * e.epsilon) == psi_j_window(j, 0.2, e.N + 0.3 * e.N * e.epsilon));
  }
}

TEST_CASE("bound on Psi_j^{(delta+1)} has a j-independent constant") {
  const double delta = 0.3;
  double cmin = 1e300, cmax = 0;
  for (int j : {0, 1, 2}) {
    const auto r = psi_j_weyl_bound_check(j, 0.2, delta, 400);
    INFO("j=", j, " C=", r.constant, " beyond=", r.beyond_support);
    CHECK(r.constant > 0);
    CHECK(std::isfinite(r.constant));
    // the support of Psi_0 reaches past N + 1; from j = 1 on it does not
    if (j > 0) CHECK(r.beyond_support == 0.0);
    cmin = std::min(cmin, r.constant);
    cmax = std::max(cmax, r.constant);
  }
  CHECK(cmax / cmin < 2.0);
}

TEST_CASE("weighted mass of Psi_j^{(delta+1)} scales like (N eps)^-delta N^delta") {
  const double delta = 0.3, gamma = 0.2;
  std::vector<double> xs, ys;
  for (int j : {1, 2, 3, 4}) {
    const auto e = schedule(j, gamma);
    xs.push_back(std::pow(e.N * e.epsilon, -delta) * std::pow(e.N, delta));
    ys.push_back(weyl_weighted_mass(psi_j_profile(j, gamma), delta + 1, delta));
  }
  const auto fit = fit_power_law(xs, ys);
  INFO("slope=", fit.slope);
  CHECK(std::abs(fit.slope - 1) < 0.15);
}

TEST_CASE("subordination identity on a Gaussian") {
  // transform (2 pi)^{d/2} e^{-rho^2/2} attached, so the Bochner-Riesz means need no forward transform
  const RadialProfile g =
      RadialProfile(2, [](double r) { return cd(std::exp(-r * r / 2), 0); }, {0, 12, 1e-30})
          .with_spectrum({[](double rho) { return cd(2 * std::numbers::pi * std::exp(-rho * rho / 2), 0); }, 0.0,
                          12.0, 1.0, {}});
  const auto psi = CompactProfile::bump(eta_spec(), 4.0, 1.0);
  for (double delta : {0.5, 1.0}) {
    for (double x : {0.0, 0.8}) {
      const auto r = subordination_check(g, psi, delta, 2, x);
      INFO("delta=", delta, " x=", x, " lhs=", r.lhs, " rhs=", r.rhs);
      CHECK(r.rel_diff() < 1e-3);
    }
  }
}

TEST_CASE("subordination vanishes where the spectrum does") {
  // spectrum a bump on |xi| < 1, Psi supported in [2, 6]
  const BumpSpec hat{-1.0, 1.0, -0.5, 0.5};
  RadialProfile f(2, [](double) { return cd(0); }, {0, 12, 1e-30});
  f = f.with_spectrum({[hat](double rho) { return cd(eval_bump(hat, rho), 0); }, 0.0, 1.0, 4.0, {}});
  const auto psi = CompactProfile::bump(eta_spec(), 4.0, 1.0);
  const auto r = subordination_check(f, psi, 1.0, 2, 0.3);
  CHECK(std::abs(r.lhs) < 1e-12);
  CHECK(std::abs(r.rhs) < 1e-12);
}
