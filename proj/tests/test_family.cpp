#include <cmath>
#include <memory>

#include "brlab/family.hpp"
#include "doctest.h"

using namespace brlab;
using cd = std::complex<double>;

namespace {

auto one_sided() { return std::make_shared<const SchwartzProfile>(PsiConvention::OneSided); }
auto even() { return std::make_shared<const SchwartzProfile>(PsiConvention::Even); }

FamilyMember member(int d, int k, double gamma, std::shared_ptr<const SchwartzProfile> psi,
                    LebesgueExponent p = LebesgueExponent::infinity()) {
  return FamilyMember(Params(d, p, 0.0, gamma, std::ldexp(1.0, -k)), std::move(psi));
}

QuadResult best(const FamilyMember& m, double x) {
  try {
    return m.oscillatory(x);
  } catch (const QuadratureError& e) {
    return e.best();
  }
}

}  // namespace

TEST_CASE("Hankel and oscillatory routes agree near the critical radius") {
  for (int d : {2, 3})
    for (int k : {4, 6, 8})
      for (double g : {0.1, 0.2}) {
        auto m = member(d, k, g, one_sided());
        for (int i = 0; i < 10; ++i) {
          const double x = m.x_c() * 0.6 * std::pow(3.5 / 0.6, i / 9.0);
          const cd h = m.spatial_hankel(x).value, o = m.oscillatory(x).value;
          CHECK(std::abs(h - o) < 1e-8 * std::abs(h));
        }
      }
}

TEST_CASE("even convention at the origin") {
  for (int d : {2, 3}) {
    auto m = member(d, 6, 0.2, even());
    const cd h = m.spatial_hankel(0).value, o = m.oscillatory(0).value;
    CHECK(std::abs(h - o) < 1e-8 * std::abs(h));
    CHECK(std::abs(o.imag()) < 1e-12 * std::abs(o));
  }
}

TEST_CASE("tabulated values follow the oscillatory route") {
  auto m = member(2, 8, 0.2, even());
  double scale = m.peak().value;
  for (double s : {0.0, 0.31, 0.77, 0.95, 1.4, 2.9, 5.5, 7.9, 12.0}) {
    const double x = s * m.x_c();
    CHECK(std::abs(m.tabulated(x) - best(m, x).value) < 1e-8 * scale);
  }
}

TEST_CASE("p = 2 norm matches Plancherel") {
  for (int k : {4, 6}) {
    auto m = member(2, k, 0.2, even(), LebesgueExponent(2));
    CHECK(m.lp_norm(LebesgueExponent(2)) == doctest::Approx(m.plancherel_l2()).epsilon(1e-8));
  }
}

TEST_CASE("peak sits near the critical radius") {
  for (int k : {4, 6, 8}) {
    auto m = member(2, k, 0.2, even());
    const auto pk = m.peak();
    CHECK(pk.x > 0.5 * m.x_c());
    CHECK(pk.x < 2 * m.x_c());
    CHECK(pk.value >= std::abs(best(m, pk.x).value) * (1 - 1e-12));
    CHECK(m.lp_norm(LebesgueExponent::infinity()) >= pk.value);
  }
}

TEST_CASE("far decay between 10 x_c and 100 x_c") {
  for (int d : {2, 3})
    for (int k : {4, 6, 8}) {
      auto m = member(d, k, 0.2, even());
      const double up = m.magnitude_upper(100 * m.x_c()), lo = m.magnitude_lower(10 * m.x_c());
      REQUIRE(lo > 0);
      CHECK(up / lo <= 1e-4);
    }
}

TEST_CASE("integration by parts bound dominates the extended precision value") {
  for (int k : {6, 8}) {
    auto m = member(2, k, 0.2, even());
    for (double s : {7.0, 10.0, 30.0}) {
      const double x = s * m.x_c();
      const auto v = m.oscillatory_extended(x);
      CHECK(std::abs(v.value) - v.err_estimate <= m.ibp_bound(x));
    }
    CHECK(m.ibp_bound(m.x_c()) >= std::abs(best(m, m.x_c()).value));
  }
}

TEST_CASE("decay report covers the three regimes") {
  auto m = member(2, 6, 0.2, even());
  std::vector<double> xs;
  for (int i = 0; i <= 24; ++i) xs.push_back(m.x_c() * std::pow(10.0, -2 + 3.0 * i / 24));
  const auto rep = decay_report(m, 2, xs);
  CHECK(rep.ok());
  int seen[3] = {0, 0, 0};
  for (const auto& r : rep.rows) ++seen[static_cast<int>(r.regime)];
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
  CHECK(rep.c_near > 0);
  CHECK(rep.c_critical > 0);
  CHECK(rep.c_far > 0);
  // constants fitted on the grid bound every row of the same grid
  const auto again = decay_report(m, 2, xs, 4.0, &rep);
  CHECK(again.ok());
}

TEST_CASE("first partial sum of the normalized series") {
  const LebesgueExponent p(4);
  auto psi = even();
  const double x = 0.3;
  const auto part = frak_F_partial(0, p, 0.2, 2, x, psi);
  FamilyMember f0(Params(2, p, 0.0, 0.2, schedule(0, 0.2).epsilon), psi);
  const cd ex = best(f0, x).value / f0.lp_norm(p);
  CHECK(std::abs(part.value - ex) < 1e-10 * std::abs(ex) + part.err);
  REQUIRE(part.terms.size() == 1);
  CHECK(std::abs(part.value) <= part.term_bounds[0] * (1 + 1e-9));
  CHECK(part.tail_bound > 0);
}

TEST_CASE("L^p norms follow the predicted power of epsilon") {
  std::vector<double> eps;
  for (int k = 4; k <= 8; ++k) eps.push_back(std::ldexp(1.0, -k));
  for (auto p : {LebesgueExponent(2), LebesgueExponent::infinity()}) {
    const auto fit = lp_scaling_fit(eps, p, 0.2, 2, even());
    REQUIRE_FALSE(fit.degenerate);
    CHECK(std::abs(fit.slope - lp_predicted_slope(2, p, 0.2)) < 0.1);
  }
  CHECK(lp_predicted_slope(2, LebesgueExponent(2), 0.2) == doctest::Approx(0.4));
  CHECK(lp_predicted_slope(2, LebesgueExponent::infinity(), 0.2) == doctest::Approx(1.3));
}
