#include <cmath>
#include <memory>

#include "brlab/truncop.hpp"
#include "doctest.h"

using namespace brlab;
using cd = std::complex<double>;

namespace {

RadialProfile gaussian(int d) {
  return RadialProfile(d, [](double r) { return cd(std::exp(-r * r / 2), 0); }, {0, 12, 1e-30});
}

FamilyMember member(int k) {
  return FamilyMember(Params(2, LebesgueExponent::infinity(), 0.2, 0.2, std::ldexp(1.0, -k)),
                      std::make_shared<const SchwartzProfile>(PsiConvention::Even));
}

}  // namespace

TEST_CASE("closed form kernel matches the Fourier integral") {
  for (int d : {2, 3})
    for (double delta : {0.0, 0.2, 1.0})
      for (double r : {0.0, 0.7, 5.0, 40.0, 300.0}) {
        const double closed = br_kernel_closed(d, delta, 1.5, r);
        const auto quad = br_kernel(d, delta, 1.5, r);
        CHECK(std::abs(closed - quad.value.real()) < 1e-9 * std::abs(closed) + 1e-12);
        CHECK(std::abs(closed) <= br_kernel_envelope(d, delta, 1.5, r));
      }
}

TEST_CASE("cutoffs") {
  DyadicPartition p(4);
  const auto ball = Cutoff::ball(p), ann = Cutoff::annular(p);
  CHECK(ball.kind() == Cutoff::Kind::Ball);
  CHECK(ann.kind() == Cutoff::Kind::Annular);
  for (double r : {0.0, 0.4, 1.0}) CHECK(ball(r) == 1.0);
  for (double r : {2.0, 3.0}) CHECK(ball(r) == 0.0);
  for (double r : {0.1, 0.5, 2.0, 5.0}) CHECK(ann(r) == 0.0);
  // chi_circ + sum_{n=b}^{K} chi(2^-n r) = ball(2^-K r)
  for (double r : {0.3, 7.0, 40.0, 100.0, 250.0}) {
    double s = p.chi_circ(r);
    for (int n = 4; n <= 7; ++n) s += ann(std::ldexp(r, -n));
    CHECK(s == doctest::Approx(ball(std::ldexp(r, -7))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(Cutoff::ball(BumpSpec{0.5, 2, 0.8, 1.2, 1}), ValidationError);
  CHECK_THROWS_AS(Cutoff::annular(ball_cutoff_spec()), ValidationError);
  CHECK_THROWS_AS((TruncationSpec{41, ball, 1, 0}.validate()), ValidationError);
}

TEST_CASE("a saturated ball cutoff leaves the mean unchanged") {
  const auto g = gaussian(2);
  TruncationSpec s{4, Cutoff::ball(), 1.0, 0.5};
  for (double x : {0.0, 0.8, 2.0}) {
    const auto full = br_mean(g, 2, 0.5, 1.0, x);
    const auto cut = truncated_mean(s, g, x);
    CHECK(std::abs(cut.value - full.value) < 1e-6 * std::abs(full.value));
  }
  CHECK(std::abs(truncated_mean_origin(s, g).value - br_mean(g, 2, 0.5, 1.0, 0).value) <
        1e-8 * std::abs(br_mean(g, 2, 0.5, 1.0, 0).value));
}

TEST_CASE("an annular cutoff beyond the mass sees nothing") {
  const auto g = gaussian(2);
  TruncationSpec s{8, Cutoff::annular(DyadicPartition(4)), 1.0, 0.5};
  CHECK(std::abs(truncated_mean_origin(s, g).value) < 1e-8);
  CHECK(std::abs(truncated_mean(s, g, 0.5).value) < 1e-8);
}

TEST_CASE("origin and frequency routes agree") {
  const auto g = gaussian(3);
  TruncationSpec s{1, Cutoff::annular(DyadicPartition(4)), 2.0, 0.3};
  const auto a = truncated_mean_origin(s, g), b = truncated_mean(s, g, 0.0);
  CHECK(std::abs(a.value - b.value) < 1e-8 * std::abs(a.value));

  auto m = member(6);
  TruncationSpec t{3, Cutoff::annular(DyadicPartition(4)), 1.0, 0.2};
  const auto o = truncated_mean_origin(t, m), f = truncated_mean(t, m.spatial_profile(), 0.0);
  CHECK(std::abs(o.value - f.value) < 1e-6 * std::abs(o.value));
}

TEST_CASE("annular pieces add up to the ball truncation") {
  DyadicPartition p(4);
  auto m = member(4);
  const auto c = annular_sum_check(p, m, 0.2, 1.0, 7);
  CHECK(c.difference() <= c.err);
  CHECK(std::abs(c.lhs) > 10 * c.err);
  const auto g = annular_sum_check(DyadicPartition(1), gaussian(2), 0.5, 1.0, 3, 0.7);
  CHECK(g.difference() <= std::max(g.err, 1e-9 * std::abs(g.lhs)));
}

TEST_CASE("regime bounds hold with fitted constants") {
  auto m = member(4);
  std::vector<int> ks;
  for (int k = 0; k <= 8; ++k) ks.push_back(k);
  TruncationSpec s{0, Cutoff::annular(DyadicPartition(4)), 1.0, 0.2};
  const auto rep = regime_bound_check(s, m, 2, ks);
  CHECK(rep.covers_all_regimes());
  CHECK(rep.ok());
  for (const auto& r : rep.rows) {
    CHECK(r.shape > 0);
    CHECK(r.magnitude <= rep.factor * r.constant * r.shape);
  }
  CHECK_THROWS_AS(regime_bound_check(TruncationSpec{}, m, 2, ks), ValidationError);
}

TEST_CASE("chirped input decays under annular truncation") {
  const DyadicPartition p(4);
  std::vector<int> ks{4, 5, 6, 7};
  const auto rep = chirp_truncation_decay(chirp_profile(2, 4, true, 1024), 0.0, 1.0, ks, Cutoff::annular(p));
  REQUIRE(rep.rows.size() == ks.size());
  CHECK(rep.chirped);
  CHECK(rep.monotone());
  CHECK(rep.decays());
  const auto ctl = chirp_truncation_decay(chirp_profile(2, 4, false, 1024), 0.0, 1.0, ks, Cutoff::annular(p));
  CHECK_FALSE(ctl.chirped);
  CHECK(ctl.rows.front().resolved);
}

TEST_CASE("report monotonicity respects resolution") {
  ChirpReport r;
  r.rows = {{4, 1e-3, 1e-9, true}, {5, 1e-5, 1e-9, true}, {6, 1e-12, 1e-9, false}, {7, 3e-12, 1e-9, false}};
  CHECK(r.monotone());
  CHECK(r.decays());
  r.rows[1].value = 2e-3;
  CHECK_FALSE(r.monotone());
}

TEST_CASE("truncated partial sums stabilize independently of the cutoff") {
  auto psi = std::make_shared<const SchwartzProfile>(PsiConvention::Even);
  const auto P = LebesgueExponent::infinity();
  const auto members = schedule_members(1, 2, P, 0.2, 0.2, psi);
  std::vector<int> ks;
  for (int k = 0; k <= 7; ++k) ks.push_back(k);
  const auto rep = welldef_probe(members, P, 0.2, 1.0, 0.0, ks, Cutoff::ball(DyadicPartition(4)),
                                 Cutoff::ball(BumpSpec{-3, 3, -1.2, 1.2, 0.5}));
  CHECK(rep.stabilized);
  CHECK(rep.cutoff_independent);
  CHECK(rep.a.rate > 0);
  CHECK(rep.b.rate > 0);
}
