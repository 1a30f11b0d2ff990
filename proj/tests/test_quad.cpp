#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "brlab/profiles.hpp"
#include "brlab/quad/adaptive.hpp"
#include "brlab/quad/bessel.hpp"
#include "brlab/quad/oscillatory.hpp"
#include "brlab/quad/radial.hpp"
#include "doctest.h"

using namespace brlab;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

// term-by-term power series in 50 digits
double series_oracle(double nu, double x) {
  big h = big(x) / 2, q = -h * h;
  big term = pow(h, big(nu)) / boost::math::tgamma(big(nu) + 1), sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (big(k) * (big(k) + big(nu)));
    sum += term;
    if (abs(term) < 1e-45 * abs(sum) && k > x) break;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("GK21 integrates polynomials up to degree 31 on one panel") {
  AdaptiveOptions o;
  o.max_intervals = 1;
  o.throw_on_failure = false;
  for (int k = 0; k <= 31; ++k) {
    auto r = integrate_adaptive([k](double t) { return std::pow(t, k); }, 0.0, 1.0, o);
    CHECK(r.value == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
}

TEST_CASE("adaptive quadrature basics") {
  auto r = integrate_adaptive([](double t) { return t * t; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(r.evals > 0);
  auto e = integrate_adaptive([](double t) { return std::exp(-t); }, 0.0, 60.0);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
  auto s = integrate_adaptive([](double t) { return 1 / std::sqrt(t); }, 0.0, 1.0);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
  AdaptiveOptions tight;
  tight.rel_tol = 1e-15;
  tight.max_intervals = 3;
  CHECK_THROWS_AS(integrate_adaptive([](double t) { return std::sin(200 * t); }, 0.0, 1.0, tight),
                  QuadratureError);
}

TEST_CASE("psi-hat integral against a dense Riemann sum") {
  const auto hat = psi_hat_spec();
  auto r = integrate_adaptive([&](double t) { return eval_bump(hat, t); }, 0.25, 2.0);
  const int n = 2000000;
  double s = 0;
  for (int i = 0; i < n; ++i) s += eval_bump(hat, 0.25 + 1.75 * (i + 0.5) / n);
  s *= 1.75 / n;
  CHECK(r.value > 0);
  CHECK(std::abs(r.value - s) < 1e-10);
}

TEST_CASE("spherical Bessel sequence") {
  for (double w : {0.1, 0.9, 3.0, 7.5, 15.0, 40.0, -6.0}) {
    auto j = spherical_bessel_sequence(16, w);
    for (int k = 0; k < 16; ++k) {
      const double ref = std::sph_bessel(k, std::abs(w)) * ((w < 0 && k % 2) ? -1 : 1);
      CHECK(std::abs(j[k] - ref) < 1e-14 * std::max(1.0, std::abs(ref)) + 1e-300);
    }
  }
}

TEST_CASE("oscillatory integrator") {
  ComplexFn one = [](double) { return cd(1, 0); };
  RealFn lin = [](double t) { return 100 * t; };
  RealFn dlin = [](double) { return 100.0; };
  auto r = integrate_oscillatory(one, lin, dlin, 0, 1);
  const cd exact = (std::exp(cd(0, 100)) - 1.0) / cd(0, 100);
  CHECK(std::abs(r.value - exact) < 1e-13);
  RealFn zero = [](double) { return 0.0; };
  auto z = integrate_oscillatory(one, zero, zero, 0, 1);
  CHECK(std::abs(z.value - 1.0) < 1e-14);

  const auto hat = psi_hat_spec();
  const double w = 200;
  ComplexFn amp = [&](double t) { return cd(eval_bump(hat, t) / t, 0); };
  RealFn ph = [&](double t) { return w * (t + 1 / t); };
  RealFn dph = [&](double t) { return w * (1 - 1 / (t * t)); };
  auto o = integrate_oscillatory(amp, ph, dph, 0.25, 2.0);
  // brute force: fixed 10^6-panel midpoint sum (Richardson corrected)
  auto brute = [&](int n) {
    cd s = 0;
    const double h = 1.75 / n;
    for (int i = 0; i < n; ++i) {
      const double t = 0.25 + (i + 0.5) * h;
      s += amp(t) * std::exp(cd(0, ph(t)));
    }
    return s * h;
  };
  const cd b1 = brute(1000000);
  CHECK(std::abs(o.value - b1) / std::abs(b1) < 1e-6);
  CHECK(o.converged);
}

TEST_CASE("oscillatory integrator agrees with adaptive over a range of frequencies") {
  ComplexFn amp = [](double t) { return cd(std::exp(-t * t), 0.3 * t); };
  for (double w : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
    RealFn ph = [w](double t) { return w * (t * t / 2 - t / 3); };
    RealFn dph = [w](double t) { return w * (t - 1.0 / 3); };
    auto o = integrate_oscillatory(amp, ph, dph, -1, 2);
    AdaptiveOptions ao;
    ao.rel_tol = 1e-12;
    ao.abs_tol = 1e-15;
    std::vector<double> br;
    for (int i = 1; i < static_cast<int>(w * 2); ++i) br.push_back(-1 + 3.0 * i / (w * 2));
    auto b = integrate_adaptive([&](double t) { return amp(t) * std::exp(cd(0, ph(t))); }, -1, 2, ao, br);
    CHECK(std::abs(o.value - b.value) <= 10 * (o.err_estimate + b.err_estimate) + 1e-14);
  }
}

TEST_CASE("Bessel J hand values") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(std::abs(bessel_j(0.5, pi)) < 1e-15);
  CHECK(bessel_j(0.0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-15));
  CHECK_THROWS_AS(bessel_j(-1.0, 1.0), ValidationError);
}

TEST_CASE("Bessel J against a multiprecision series oracle") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 0.3, 3.7}) {
    for (double x = 0.05; x <= 50; x += 0.173) {
      const double ref = series_oracle(nu, x);
      const double v = bessel_j(nu, x);
      // pointwise bound scaled by the local condition number of J
      const double scale = std::max(std::abs(ref), 1e-3 / std::sqrt(x));
      INFO("nu=" << nu << " x=" << x << " ref=" << ref);
      CHECK(std::abs(v - ref) / scale < 1e-12);
    }
  }
}

TEST_CASE("Bessel recurrence") {
  for (double m : {1.0, 1.5, 2.3}) {
    for (double r = 0.3; r < 5000; r *= 1.37) {
      const double lhs = bessel_j(m - 1, r) + bessel_j(m + 1, r);
      const double rhs = 2 * m / r * bessel_j(m, r);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * (std::abs(lhs) + std::abs(bessel_j(m, r))));
    }
  }
}

TEST_CASE("Bessel leading asymptotic") {
  for (double r : {1.0, 7.5, 60.0}) CHECK(bessel_asymptotic_leading(0.5, r) == doctest::Approx(std::sqrt(2 / (pi * r)) * std::sin(r)));
  CHECK_THROWS_AS(bessel_asymptotic_leading(0.0, 0.0), ValidationError);
  double last = 1;
  for (double r : {100.0, 1000.0, 10000.0}) {
    double m = 0;
    for (double x = r; x < r + 10; x += 0.01) m = std::max(m, std::abs(bessel_j(0.0, x) - bessel_asymptotic_leading(0, x)));
    CHECK(m < last);
    last = m;
  }
}

TEST_CASE("radial transform closed forms") {
  RadialProfile gauss(3, [](double r) { return cd(std::exp(-r * r / 2), 0); }, {0, 40, 1e-300});
  for (double rho : {0.0, 0.5, 1.0, 3.0, 6.0}) {
    auto r = radial_fourier(gauss, 3, rho);
    const double ex = std::pow(2 * pi, 1.5) * std::exp(-rho * rho / 2);
    CHECK(std::abs(r.value - ex) < 1e-10 * ex + 1e-14);
  }
  RadialProfile ball(3, [](double) { return cd(1, 0); }, {0, 1, 0});
  for (double rho : {0.5, 2.0, 17.0, 120.0}) {
    auto r = radial_fourier(ball, 3, rho);
    const double ex = 4 * pi * (std::sin(rho) - rho * std::cos(rho)) / (rho * rho * rho);
    CHECK(std::abs(r.value - ex) < 1e-10 * std::abs(ex) + 1e-13);
  }
  RadialProfile uncertified(2, [](double) { return cd(1, 0); }, {0, 1, NAN});
  CHECK_THROWS_AS(radial_fourier(uncertified, 2, 1.0), ValidationError);
}

TEST_CASE("carrier profiles use the Filon route consistently") {
  // g(r) = e^{-r^2/50} e^{i r^2/2}: compare the Filon path with plain adaptive
  RadialProfile::Carrier car{[](double r) { return r * r / 2; }, [](double r) { return r; }};
  RadialProfile chirp(2, [](double r) { return cd(std::exp(-r * r / 50), 0); }, car, {0, 45, 1e-300}, 0.5);
  RadialProfile plain(2, [](double r) { return std::exp(cd(-r * r / 50, r * r / 2)); }, {0, 45, 1e-300}, 46);
  for (double rho : {0.5, 3.0, 12.0, 30.0}) {
    auto a = radial_fourier(chirp, 2, rho);
    RadialOptions no;
    no.allow_filon = false;
    auto b = radial_fourier(plain, 2, rho, no);
    CHECK(std::abs(a.value - b.value) < 1e-8 * std::abs(b.value) + 1e-12);
  }
}

TEST_CASE("Hankel plan reproduces the adaptive transform") {
  RadialProfile g(2, [](double r) { return cd(std::exp(-r * r / 2) * (1 + r), std::sin(r) * std::exp(-r * r / 3)); },
                  {0, 14, 1e-30}, 1.0);
  HankelPlan plan(g, 2, 8.0, 0.5);
  for (double rho : {0.0, 1.0, 4.0, 8.0}) {
    auto a = plan.transform(rho);
    auto b = radial_fourier(g, 2, rho);
    CHECK(std::abs(a.value - b.value) < 1e-11);
    CHECK(a.err_estimate < 1e-9);
  }
  CHECK_THROWS_AS(plan.transform(9.0), ValidationError);
}

TEST_CASE("spline profile") {
  std::vector<double> r;
  std::vector<cd> v;
  for (int i = 0; i <= 400; ++i) {
    r.push_back(i * 0.02);
    v.push_back(std::exp(-r.back() * r.back()));
  }
  auto p = RadialProfile::from_samples(2, r, v, 1e-20);
  CHECK(p.sampled());
  CHECK(std::abs(p(1.234) - std::exp(-1.234 * 1.234)) < 1e-6);
  CHECK_THROWS_AS(RadialProfile::from_samples(2, {0.0, 0.0}, {1.0, 1.0}, 0), ValidationError);
}
