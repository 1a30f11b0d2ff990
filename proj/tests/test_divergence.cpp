#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "brlab/divergence.hpp"
#include "doctest.h"

using namespace brlab;
using cd = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

std::shared_ptr<const SchwartzProfile> even_psi() {
  static const auto p = std::make_shared<const SchwartzProfile>(PsiConvention::Even);
  return p;
}

FamilyMember member(int d, int k, double gamma) {
  return FamilyMember(Params(d, LebesgueExponent::infinity(), 0, gamma, std::ldexp(1.0, -k)), even_psi());
}

// shell integral of the indicator of A by the midpoint rule
double shell_measure(double N, int d, int n) {
  const double h = 1.5 / n;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const double r = 0.5 + (i + 0.5) * h;
    if (std::cos(std::sqrt(N) * r - (d - 1) * pi / 4) > 0.5) sum += std::pow(r, d - 1) * h;
  }
  return sum * (d == 2 ? 2 * pi : 4 * pi);
}

}  // namespace

TEST_CASE("set A: intervals, measure and the 1/3 limit") {
  for (int d : {2, 3})
    for (double N : {50.0, 1e4, 1e6}) {
      const auto A = set_A(N, d);
      REQUIRE(!A.intervals.empty());
      for (const auto& [a, b] : A.intervals) {
        CHECK(A.contains(0.5 * (a + b)));
        if (a > 0.5 && b < 2) CHECK(b - a == doctest::Approx(2 * pi / 3 / std::sqrt(N)).epsilon(1e-12));
      }
      CHECK(A.measure == doctest::Approx(shell_measure(N, d, 2000000)).epsilon(1e-4));
      for (double x : A.samples(5)) CHECK(A.cosine(x) > 0.55);
      if (N >= 1e4) CHECK(std::abs(A.fraction() - 1.0 / 3) < 0.02 / 3);
    }
  const auto A2 = set_A(1e6, 2);
  CHECK(A2.annulus_measure == doctest::Approx(15 * pi / 4).epsilon(1e-14));
  CHECK(A2.measure == doctest::Approx(5 * pi / 4).epsilon(0.01));
  CHECK_THROWS_AS(set_A(0.0, 2), ValidationError);
}

TEST_CASE("spectral route agrees with the multiplier routes") {
  for (int d : {2, 3})
    for (int k : {4, 6}) {
      const auto m = member(d, k, 0.2);
      for (double x : set_A(m.N(), d).samples(2)) {
        const auto exact = spectral_apply(m, x, BesselMode::Exact);
        CHECK(exact.converged);
        const auto known = window_apply(m, m, x, MultiplierSource::KnownSpectrum);
        const auto values = window_apply(m, m, x, MultiplierSource::SpatialValues);
        INFO("d=", d, " k=", k, " x=", x);
        CHECK(std::abs(known.value - exact.value) < 1e-8 * std::abs(exact.value));
        CHECK(std::abs(values.value - exact.value) < 1e-4 * std::abs(exact.value));
      }
    }
  CHECK_THROWS_AS(spectral_apply(member(2, 4, 0.2), 0.3, BesselMode::Exact), ValidationError);
}

TEST_CASE("leading Bessel term: remainder relative to the main term decays like N^-1/2") {
  std::vector<double> Ns, rels;
  for (int k = 4; k <= 20; k += 4) {
    const auto r = leading_error(member(2, k, 0.9));
    Ns.push_back(r.N);
    rels.push_back(r.rel());
  }
  const auto fit = fit_power_law(Ns, rels);
  INFO("slope=", fit.slope);
  CHECK(std::abs(fit.slope + 0.5) < 0.15);
  // J_{1/2} equals its leading term
  CHECK(leading_error(member(3, 8, 0.9)).rel() < 1e-12);
}

TEST_CASE("value on A against the zeros of the cosine") {
  const auto m = member(2, 12, 0.9);
  const double s = std::sqrt(m.N());
  double best = 0;
  for (double x : set_A(m.N(), 2).samples(4)) best = std::max(best, std::abs(spectral_apply(m, x, BesselMode::Exact).value));
  // cos(sqrt N x - pi/4) = 0
  const double x0 = (std::round((s - pi / 4 - pi / 2) / (2 * pi)) * 2 * pi + pi / 2 + pi / 4) / s;
  REQUIRE(x0 >= 0.5);
  REQUIRE(x0 <= 2);
  CHECK(std::abs(spectral_apply(m, x0, BesselMode::Exact).value) < 0.1 * best);
}

TEST_CASE("divergence ratio over the schedule") {
  const auto p = LebesgueExponent::infinity();
  double lo = 1e300, hi = 0;
  for (int j = 0; j <= 3; ++j) {
    const auto e = schedule(j, 0.2);
    const FamilyMember m(Params(2, p, 0, 0.2, e.epsilon), even_psi());
    const auto A = set_A(m.N(), 2);
    double worst = 1e300;
    for (double x : A.samples(4)) {
      const auto r = divergence_ratio(m, p, x);
      CHECK(r.ratio > 0);
      worst = std::min(worst, r.ratio / r.predicted);
    }
    const auto best = max_divergence_ratio(m, p, 4);
    INFO("j=", j, " min=", worst, " max=", best.ratio / best.predicted);
    CHECK(worst > 0.05);
    lo = std::min(lo, best.ratio / best.predicted);
    hi = std::max(hi, best.ratio / best.predicted);
  }
  CHECK(hi / lo < 4);
  const auto m0 = member(2, 4, 0.2);
  const auto A0 = set_A(m0.N(), 2);
  double outside = 0.5;
  while (A0.contains(outside)) outside += 0.01;
  CHECK_THROWS_AS(divergence_ratio(m0, p, outside), ValidationError);
}

TEST_CASE("exponent sweep on a short grid") {
  std::vector<double> eps;
  for (int k = 4; k <= 8; ++k) eps.push_back(std::ldexp(1.0, -k));
  const auto s = exponent_sweep(eps, 0.2, 2, LebesgueExponent::infinity(), even_psi(), {}, 4);
  INFO("slope=", s.fit.slope);
  CHECK(s.expected == doctest::Approx(-0.5));
  CHECK(s.within(0.15));
  // critical index zero: the ratio stays bounded
  const auto c = exponent_sweep(eps, 0.2, 2, LebesgueExponent(4.0), even_psi(), {}, 4);
  INFO("control slope=", c.fit.slope);
  CHECK(std::abs(c.fit.slope) < 0.05);
  CHECK_THROWS_AS(exponent_sweep({0.1, 0.05}, 0.2, 2, LebesgueExponent::infinity(), even_psi()), ValidationError);
}

TEST_CASE("cross terms") {
  const double x = set_A(0, 0.2, 2).samples(1)[0];
  const auto same = cross_term(0, 0, 0.2, 2, x, even_psi());
  CHECK(same.ratio() == doctest::Approx(1.0).epsilon(1e-12));
  double prev = 2;
  for (int k = 1; k <= 3; ++k) {
    const auto c = cross_term(0, k, 0.2, 2, x, even_psi());
    INFO("k=", k, " ratio=", c.ratio());
    CHECK(c.ratio() < prev);
    prev = c.ratio();
  }
  const double x3 = set_A(3, 0.2, 2).samples(1)[0];
  CHECK(cross_term(3, 4, 0.2, 2, x3, even_psi()).ratio() < 1e-6);
}

TEST_CASE("blow-up trajectory closed form") {
  const auto t = blowup_trajectory(2, LebesgueExponent::infinity(), 0.3, 0.2, 8);
  CHECK(t.sigma == doctest::Approx(-0.15).epsilon(1e-12));
  CHECK(t.terms[5] == doctest::Approx(std::exp2(-0.2)).epsilon(1e-12));
  CHECK(t.terms[6] == doctest::Approx(std::exp2(3.6)).epsilon(1e-12));
  CHECK(t.turning_point == 3);
  CHECK(t.matches_closed_form());
  for (int j = 5; j < 8; ++j) CHECK(t.terms[j + 1] > t.terms[j]);

  // sigma -> 0-: eps_j^sigma -> 1
  const auto flat = blowup_trajectory(2, LebesgueExponent::infinity(), 0.5 - 1e-9, 1e-9, 4);
  for (int j = 0; j <= 4; ++j) CHECK(flat.terms[j] * std::exp2(j) == doctest::Approx(1.0).epsilon(1e-6));

  try {
    blowup_trajectory(2, LebesgueExponent::infinity(), 0.5, 0.2, 4);
    FAIL("sigma >= 0 accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("gamma_max") != std::string::npos);
  }
}

TEST_CASE("numerical blow-up rows") {
  const auto rows = blowup_numerical(3, LebesgueExponent::infinity(), 0.2, 0.2, {1, 3}, 3, even_psi(), 4);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.scaled > 0);
    CHECK(set_A(r.j, 0.2, 3).contains(r.x));
  }
  // cross terms from the other members are negligible at the top of the schedule
  CHECK(rows[1].diagonal_share > 0.9);
}
