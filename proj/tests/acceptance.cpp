// Acceptance table: one PASS/FAIL line per criterion.
// Usage: acceptance [C1 C2 ...]; no arguments runs every criterion.
// Exit status is 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include "brlab/divergence.hpp"
#include "brlab/family.hpp"
#include "brlab/fit.hpp"
#include "brlab/multiplier.hpp"
#include "brlab/params.hpp"
#include "brlab/quad/bessel.hpp"
#include "brlab/quad/radial.hpp"
#include "brlab/truncop.hpp"
#include "brlab/weyl.hpp"

using namespace brlab;
using cd = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::shared_ptr<const SchwartzProfile> even_psi() {
  static const auto p = std::make_shared<const SchwartzProfile>(PsiConvention::Even);
  return p;
}

std::shared_ptr<const SchwartzProfile> one_sided_psi() {
  static const auto p = std::make_shared<const SchwartzProfile>(PsiConvention::OneSided);
  return p;
}

std::vector<double> eps_grid(int k_lo, int k_hi) {
  std::vector<double> e;
  for (int k = k_lo; k <= k_hi; ++k) e.push_back(std::ldexp(1.0, -k));
  return e;
}

// ---------------------------------------------------------------- C1

void c1(Outcome& o) {
  struct Case {
    int d;
    LebesgueExponent p;
    double expect;
  };
  const auto inf = LebesgueExponent::infinity();
  const Case cases[] = {{2, inf, 0.5},
                        {2, LebesgueExponent(4), 0.0},
                        {3, LebesgueExponent(2), 0.0},
                        {3, LebesgueExponent(4), 0.25},
                        {4, inf, 1.5},
                        {2, LebesgueExponent(6), 1.0 / 6}};
  double worst = 0;
  for (const auto& c : cases) worst = std::max(worst, std::abs(critical_index(c.d, c.p) - c.expect));
  o.detail << "max |delta - hand value| = " << worst;
  o.require(worst <= 4 * std::numeric_limits<double>::epsilon(), "hand values");
}

// ---------------------------------------------------------------- C2

void c2(Outcome& o) {
  using f128 = boost::multiprecision::float128;
  double worst_self = 0;
  for (int d : {2, 3}) {
    for (int i = 0; i <= 40; ++i) {
      const f128 rho = f128(i) / 4;
      auto g = [](f128 r) { return exp(-r * r / 2); };
      const auto r = radial_fourier_extended<f128>(g, d, rho, f128(16), f128(1e-14));
      const f128 ex = pow(2 * boost::math::constants::pi<f128>(), f128(d) / 2) * exp(-rho * rho / 2);
      worst_self = std::max(worst_self, static_cast<double>(abs(r.value - ex) / ex));
    }
  }
  // forward transform then inverse, through the identity multiplier on a computed spectrum
  RadialMultiplier one;
  one.m = [](double) { return cd(1, 0); };
  one.s_lo = 0;
  one.s_hi = 144;
  one.tail_tol = 1e-30;
  MultiplierOptions mo;
  mo.use_known_spectrum = false;
  double worst_trip = 0;
  for (int d : {2, 3}) {
    const RadialProfile g(d, [](double r) { return cd(std::exp(-r * r / 2) * (1 + r * r), 0); }, {0, 14, 1e-30});
    for (double x : {0.0, 0.5, 1.0, 1.7, 2.5, 3.0}) {
      const double ex = std::exp(-x * x / 2) * (1 + x * x);
      const auto r = apply_multiplier(one, g, d, x, mo);
      worst_trip = std::max(worst_trip, std::abs(r.value - ex) / ex);
    }
  }
  o.detail << "self-reciprocity max rel " << worst_self << " (tol 1e-8); round trip max rel " << worst_trip
           << " (tol 1e-6)";
  o.require(worst_self < 1e-8, "Gaussian self-reciprocity");
  o.require(worst_trip < 1e-6, "inversion round trip");
}

// ---------------------------------------------------------------- C3

using big = boost::multiprecision::cpp_bin_float_50;

// power series of J_nu in 50 digits
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

// sqrt(2/pi) sum_k |a_k(m)| r0^{1-k}, a_k the Hankel expansion coefficients, bounds
// r^{3/2} |J_m - leading| for r >= r0 when r0 is well inside the asymptotic range
double remainder_bound(double m, double r0) {
  double a = 1, sum = 0;
  for (int k = 1; k <= 8; ++k) {
    a *= (4 * m * m - (2 * k - 1) * (2 * k - 1)) / (8.0 * k);
    sum += std::abs(a) * std::pow(r0, 1 - k);
  }
  return std::sqrt(2 / pi) * sum;
}

void c3(Outcome& o) {
  const double orders[] = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  double worst_rel = 0, worst_at = 0, worst_nu = 0;
  for (double nu : orders)
    for (int i = 1; i <= 1000; ++i) {
      const double x = 0.05 * i - 0.0137;
      const double ref = series_oracle(nu, x);
      const double rel = std::abs(bessel_j(nu, x) - ref) / std::abs(ref);
      if (rel > worst_rel) {
        worst_rel = rel;
        worst_at = x;
        worst_nu = nu;
      }
    }
  double worst_ratio = 0;
  for (double nu : orders) {
    const double bound = remainder_bound(nu, 20) + 1e-9;
    double m = 0;
    for (double r = 20; r <= 500; r += 0.01) m = std::max(m, std::pow(r, 1.5) * std::abs(bessel_j(nu, r) - bessel_asymptotic_leading(nu, r)));
    worst_ratio = std::max(worst_ratio, m / bound);
  }
  o.detail << "series oracle max rel " << worst_rel << " at nu=" << worst_nu << " r=" << worst_at
           << " (tol 1e-10); max r^1.5|J - leading| / Hankel bound " << worst_ratio << " (tol 1)";
  o.require(worst_rel < 1e-10, "series oracle");
  o.require(worst_ratio <= 1, "leading asymptotic remainder");
}

// ---------------------------------------------------------------- C4, C7

std::vector<FamilyMember> criterion4_members(const std::shared_ptr<const SchwartzProfile>& psi) {
  std::vector<FamilyMember> out;
  for (int d : {2, 3})
    for (int k : {4, 6, 8})
      for (double g : {0.1, 0.2})
        out.emplace_back(Params(d, LebesgueExponent::infinity(), 0, g, std::ldexp(1.0, -k)), psi);
  return out;
}

void c4(Outcome& o) {
  double worst = 0;
  for (const auto& m : criterion4_members(one_sided_psi()))
    for (int i = 0; i < 10; ++i) {
      const double x = m.x_c() * 0.6 * std::pow(3.5 / 0.6, i / 9.0);
      const cd h = m.spatial_hankel(x).value, s = m.oscillatory(x).value;
      worst = std::max(worst, std::abs(h - s) / std::abs(h));
    }
  o.detail << "12 members x 10 radii, max rel |hankel - oscillatory| = " << worst << " (tol 1e-4)";
  o.require(worst < 1e-4, "dual route");
}

void c7(Outcome& o) {
  double worst = 0;
  for (const auto& m : criterion4_members(even_psi())) {
    const double lo = m.magnitude_lower(10 * m.x_c());
    const double up = m.magnitude_upper(100 * m.x_c());
    worst = std::max(worst, lo > 0 ? up / lo : INFINITY);
  }
  o.detail << "max certified |f(100 x_c)| / |f(10 x_c)| = " << worst << " (tol 1e-4)";
  o.require(worst <= 1e-4, "far decay");
}

// ---------------------------------------------------------------- C5, C6

void c5(Outcome& o) {
  const double gamma = 0.2;
  const int d = 2;
  std::vector<double> eps = eps_grid(4, 12), peaks;
  for (double e : eps)
    peaks.push_back(FamilyMember(Params(d, LebesgueExponent::infinity(), 0, gamma, e), even_psi()).peak().value);
  const auto fit = fit_power_law(eps, peaks);
  const double expect = 0.5 + (1 - gamma) * d / 2;
  o.detail << "slope " << fit.slope << " vs " << expect << " (tol 0.1)";
  o.require(!fit.degenerate && std::abs(fit.slope - expect) <= 0.1, "peak exponent");
}

void c6(Outcome& o) {
  const double gamma = 0.2;
  const int d = 2;
  const auto eps = eps_grid(4, 12);
  for (auto p : {LebesgueExponent(2), LebesgueExponent(4), LebesgueExponent::infinity()}) {
    const double expect = 0.5 + (1 - gamma) * d / 2 + (gamma / 2 - 1) * d * p.reciprocal();
    const auto fit = lp_scaling_fit(eps, p, gamma, d, even_psi());
    o.detail << "p=" << p.str() << " slope " << fit.slope << " vs " << expect << "; ";
    o.require(!fit.degenerate && std::abs(fit.slope - expect) <= 0.1, "L^p exponent p=" + p.str());
  }
  double worst = 0;
  for (double e : eps) {
    const FamilyMember m(Params(d, LebesgueExponent(2), 0, gamma, e), even_psi());
    worst = std::max(worst, std::abs(m.lp_norm(LebesgueExponent(2)) / m.plancherel_l2() - 1));
  }
  o.detail << "Plancherel max rel " << worst << " (tol 1e-4)";
  o.require(worst < 1e-4, "Plancherel");
}

// ---------------------------------------------------------------- C8

void c8(Outcome& o) {
  const double gamma = 0.2, delta = 0.2, t = 1;
  const FamilyMember m(Params(2, LebesgueExponent::infinity(), delta, gamma, std::ldexp(1.0, -6)), even_psi());
  std::vector<int> ks;
  for (int k = 0; k <= 10; ++k) ks.push_back(k);
  const TruncationSpec s{0, Cutoff::annular(DyadicPartition(4)), t, delta};
  const auto rep = regime_bound_check(s, m, 2, ks);
  int violations = 0;
  for (const auto& r : rep.rows) violations += r.violation;
  o.detail << "regime rows " << rep.rows.size() << ", violations " << violations << " (factor " << rep.factor
           << "); ";
  o.require(rep.covers_all_regimes(), "all three regimes present");
  o.require(rep.ok(), "regime bounds");

  const auto P = LebesgueExponent::infinity();
  const auto members = schedule_members(1, 2, P, delta, gamma, even_psi());
  std::vector<int> wk;
  for (int k = 0; k <= 7; ++k) wk.push_back(k);
  const auto w = welldef_probe(members, P, delta, t, 0.0, wk, Cutoff::ball(DyadicPartition(4)),
                               Cutoff::ball(BumpSpec{-3, 3, -1.2, 1.2, 0.5}));
  o.detail << "Cauchy rates " << w.a.rate << ", " << w.b.rate << "; limit difference " << w.limit_difference
           << " vs combined error " << w.combined_err;
  o.require(w.stabilized && w.a.rate > 0 && w.b.rate > 0, "positive Cauchy rate");
  o.require(w.cutoff_independent, "cutoff independence");
}

// ---------------------------------------------------------------- C9

void c9(Outcome& o) {
  std::vector<int> ks;
  for (int k = 4; k <= 12; ++k) ks.push_back(k);
  const DyadicPartition part(4);
  const auto chirp = chirp_truncation_decay(chirp_profile(2, 4, true, 8192), 0.0, 1.0, ks, Cutoff::annular(part));
  const auto ctl = chirp_truncation_decay(chirp_profile(2, 4, false, 8192), 0.0, 1.0, ks, Cutoff::annular(part));
  o.detail << "chirped: first " << chirp.rows.front().upper() << " last " << chirp.rows.back().upper()
           << "; control: first " << ctl.rows.front().upper() << " last " << ctl.rows.back().upper();
  o.require(chirp.monotone() && chirp.decays(), "chirped sequence decays monotonically");
  o.require(!ctl.decays(), "unchirped control does not decay");
}

// ---------------------------------------------------------------- C10

void c10(Outcome& o) {
  const auto psi = CompactProfile::bump(eta_spec(), 1.0, 0.25);
  std::vector<double> ts;
  for (int i = 0; i <= 40; ++i) ts.push_back(psi.lo() - 0.5 + (psi.hi() + 0.1 - psi.lo() + 0.5) * i / 40);
  double worst = 0;
  for (double nu : {0.3, 0.5, 1.5, 2.5}) worst = std::max(worst, reconstruction_check(psi, nu, ts));
  o.detail << "reconstruction max error " << worst << " (tol 1e-6); ";
  o.require(worst < 1e-6, "reconstruction");

  const RadialProfile g =
      RadialProfile(2, [](double r) { return cd(std::exp(-r * r / 2), 0); }, {0, 12, 1e-30})
          .with_spectrum({[](double rho) { return cd(2 * pi * std::exp(-rho * rho / 2), 0); }, 0.0, 12.0, 1.0, {}});
  const auto window = CompactProfile::bump(eta_spec(), 4.0, 1.0);
  double worst_sub = 0;
  for (double delta : {0.5, 1.0})
    for (double x : {0.0, 0.8}) worst_sub = std::max(worst_sub, subordination_check(g, window, delta, 2, x).rel_diff());
  o.detail << "subordination max rel " << worst_sub << " (tol 1e-3)";
  o.require(worst_sub < 1e-3, "subordination");
}

// ---------------------------------------------------------------- C11

void c11(Outcome& o) {
  const double gamma = 0.2;
  const auto eps = eps_grid(4, 10);
  struct Target {
    int d;
    LebesgueExponent p;
  };
  for (const auto& [d, p] : {Target{2, LebesgueExponent::infinity()}, Target{3, LebesgueExponent(4)}}) {
    const auto s = exponent_sweep(eps, gamma, d, p, even_psi());
    o.detail << "(d=" << d << ", p=" << p.str() << ") slope " << s.fit.slope << " vs " << s.expected << "; ";
    o.require(s.within(0.15), "slope (d=" + std::to_string(d) + ", p=" + p.str() + ")");
  }

  double worst_route = 0;
  for (int d : {2, 3})
    for (int j = 0; j <= 3; ++j) {
      const auto e = schedule(j, gamma);
      const FamilyMember m(Params(d, LebesgueExponent::infinity(), 0, gamma, e.epsilon), even_psi());
      const auto xs = set_A(m.N(), d).samples(1);
      for (std::size_t i = 0; i < std::min<std::size_t>(2, xs.size()); ++i) {
        const double x = xs[i];
        const double ex = std::abs(spectral_apply(m, x, BesselMode::Exact).value);
        for (auto src : {MultiplierSource::KnownSpectrum, MultiplierSource::SpatialValues}) {
          const auto r = window_apply(m, m, x, src);
          worst_route = std::max(worst_route, std::abs(std::abs(r.value) - ex) / ex);
        }
      }
    }
  o.detail << "route max rel " << worst_route << " (tol 1e-4); ";
  o.require(worst_route < 1e-4, "route independence");

  double worst_cross = 0;
  int wj = 0;
  for (int j = 0; j <= 3; ++j) {
    const double x = set_A(j, gamma, 2).samples(1)[0];
    const double r = cross_term(j, j + 1, gamma, 2, x, even_psi()).ratio();
    if (r > worst_cross) {
      worst_cross = r;
      wj = j;
    }
  }
  o.detail << "adjacent cross/diagonal max " << worst_cross << " at j=" << wj << " (tol 1e-6); ";
  o.require(worst_cross < 1e-6, "cross terms");

  double worst_frac = 0;
  for (int d : {2, 3})
    for (double N : {1e4, 1e5, 1e6}) worst_frac = std::max(worst_frac, std::abs(set_A(N, d).fraction() * 3 - 1));
  o.detail << "|3 |A| / |annulus| - 1| max " << worst_frac << " (tol 0.02)";
  o.require(worst_frac < 0.02, "measure fraction");
}

// ---------------------------------------------------------------- C12

void c12(Outcome& o) {
  // sigma = delta - delta(d,p) + gamma delta(d,p) / 2 = -0.7 < -1/2, so 2^j > -1/sigma from j = 1 on
  const int d = 3;
  const auto p = LebesgueExponent::infinity();
  const double delta = 0.2, gamma = 0.2;
  const int J = 9;  // schedule ceiling
  const auto t = blowup_trajectory(d, p, delta, gamma, J);
  const double sg = delta - critical_index(d, p) + gamma * critical_index(d, p) / 2;
  int turning = 0;
  while (std::ldexp(1.0, turning) <= -1 / sg) ++turning;
  bool closed = std::abs(t.sigma - sg) < 1e-14 && t.turning_point == turning && t.matches_closed_form();
  for (int j = 0; j <= J; ++j) {
    const auto e = schedule(j, gamma, J);
    closed = closed && std::abs(t.terms[j] / (std::ldexp(1.0, -j) * std::pow(e.epsilon, sg)) - 1) < 1e-12;
  }
  for (int j = turning; j < J; ++j) closed = closed && t.terms[j + 1] > t.terms[j];
  o.detail << "sigma " << t.sigma << ", turning point " << t.turning_point << "; ";
  o.require(closed, "closed-form trajectory");

  const auto rows = blowup_numerical(d, p, delta, gamma, {1, 2, 3}, 3, even_psi());
  bool increasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.detail << "j=" << rows[i].j << " " << rows[i].scaled << (i + 1 < rows.size() ? ", " : "");
    if (i > 0) increasing = increasing && rows[i].scaled > rows[i - 1].scaled;
  }
  o.require(increasing, "numerical counterpart increasing over j = 1..3");
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"C1", "critical index", c1},
      {"C2", "radial Fourier engine", c2},
      {"C3", "Bessel J", c3},
      {"C4", "dual-route f_eps", c4},
      {"C5", "peak scaling", c5},
      {"C6", "L^p scaling", c6},
      {"C7", "far decay", c7},
      {"C8", "truncation regimes", c8},
      {"C9", "chirp control", c9},
      {"C10", "Weyl calculus", c10},
      {"C11", "divergence slope", c11},
      {"C12", "blow-up trajectory", c12},
  };
  std::vector<std::string> want(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!want.empty() && std::find(want.begin(), want.end(), c.id) == want.end()) continue;
    ++ran;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%-4s %s  %s: %s (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion selected\n");
    return 2;
  }
  return failed ? 1 : 0;
}
