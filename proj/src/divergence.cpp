#include "brlab/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "brlab/error.hpp"
#include "brlab/quad/adaptive.hpp"
#include "brlab/quad/bessel.hpp"
#include "brlab/quad/radial.hpp"

namespace brlab {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kSampleMargin = 0.55;
using cd = std::complex<double>;

void check_radius(double x_mag) {
  if (!(x_mag >= 0.5 && x_mag <= 2)) throw ValidationError("divergence radii must lie in [1/2, 2]");
}

FamilyMember schedule_member(int j, double gamma, int d, std::shared_ptr<const SchwartzProfile> psi, int ceiling,
                             const LebesgueExponent& p = LebesgueExponent::infinity(), double delta = 0) {
  const auto e = schedule(j, gamma, ceiling);
  return FamilyMember(Params(d, p, delta, gamma, e.epsilon), std::move(psi));
}

RadialMultiplier window_multiplier(const FamilyMember& w) {
  const double N = w.N(), ne = N * w.epsilon();
  const BumpSpec eta = eta_spec();
  RadialMultiplier m;
  m.m = [eta, N, ne](double s) -> cd { return eval_bump(eta, (s - N) / ne); };
  m.s_lo = std::max(0.0, N + ne * eta.a);
  m.s_hi = N + ne * eta.b;
  m.breakpoints = {m.s_lo, m.s_hi};
  m.rho_bandwidth = 4 / (std::sqrt(N) * w.epsilon());
  return m;
}

}  // namespace

CompactProfile divergence_window(const FamilyMember& m, const BumpSpec& eta) {
  return CompactProfile::bump(eta, m.N(), m.N() * m.epsilon(), "window");
}

QuadResult spectral_apply(const FamilyMember& m, double x_mag, BesselMode mode) {
  check_radius(x_mag);
  const int d = m.dim();
  const double N = m.N(), eps = m.epsilon(), nu = (d - 2) / 2.0;
  const BumpSpec eta = eta_spec();
  const SchwartzProfile& psi = m.psi();
  // r^2 = N (1 + eps tau), so Psi(r^2) = eta(tau) and F(r) = psi(-tau)
  auto r_of = [N, eps](double tau) { return std::sqrt(N * (1 + eps * tau)); };
  const double tau_lo = std::max(eta.a, -1 / eps);
  const double r_lo = r_of(tau_lo), r_hi = r_of(eta.b);
  const bool in_window =
      r_lo >= std::sqrt(N) * (1 - 4 * eps) - 1e-12 * std::sqrt(N) && r_hi <= std::sqrt(N) * (1 + 4 * eps);
  auto g = [&](double tau) -> cd {
    const double w = eval_bump(eta, tau);
    if (w == 0) return 0.0;
    const double r = r_of(tau);
    const double z = r * x_mag;
    const double J = mode == BesselMode::Exact ? bessel_j(nu, z) : bessel_asymptotic_leading(nu, z);
    return w * psi(-tau) * J * std::pow(r, d / 2.0) * (N * eps / (2 * r));
  };
  std::vector<double> breaks;
  for (int i = 1; i < 16; ++i) breaks.push_back(tau_lo + (eta.b - tau_lo) * i / 16);
  breaks.push_back(eta.c);
  breaks.push_back(eta.e);
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  opt.throw_on_failure = false;
  auto r = integrate_adaptive(g, tau_lo, eta.b, opt, breaks);
  const double pref = std::pow(2 * pi, -d / 2.0) * std::pow(x_mag, -nu);
  r.value *= pref;
  r.err_estimate *= pref;
  r.converged = r.converged && in_window;
  return r;
}

QuadResult spectral_apply(int j, double gamma, int d, double x_mag, BesselMode mode,
                          std::shared_ptr<const SchwartzProfile> psi, int ceiling) {
  return spectral_apply(schedule_member(j, gamma, d, std::move(psi), ceiling), x_mag, mode);
}

QuadResult window_apply(const FamilyMember& window, const FamilyMember& f, double x_mag, MultiplierSource src,
                        const MultiplierOptions& opt) {
  if (window.dim() != f.dim()) throw ValidationError("window and input dimensions differ");
  const auto mult = window_multiplier(window);
  MultiplierOptions o = opt;
  if (src == MultiplierSource::KnownSpectrum) {
    o.use_known_spectrum = true;
    return apply_multiplier(mult, f.spatial_profile(), f.dim(), x_mag, o);
  }
  o.use_known_spectrum = false;
  const double hi = f.envelope_table().hi();
  const RadialProfile values(f.dim(), [f](double r) { return f.tabulated(r); }, {0.0, hi, f.ibp_bound(hi)},
                             std::sqrt(f.N()));
  return apply_multiplier(mult, values, f.dim(), x_mag, o);
}

double AnnularSet::cosine(double x_mag) const { return std::cos(std::sqrt(N) * x_mag - (d - 1) * pi / 4); }

bool AnnularSet::contains(double x_mag) const {
  return x_mag >= 0.5 && x_mag <= 2 && cosine(x_mag) > 0.5;
}

std::vector<double> AnnularSet::samples(int n) const {
  // cos > 0.55 keeps samples away from the cosine boundary
  const double s = std::sqrt(N), phase = (d - 1) * pi / 4, half = std::acos(kSampleMargin);
  std::vector<double> out;
  for (const auto& [a, b] : intervals) {
    const double k = std::round((s * 0.5 * (a + b) - phase) / (2 * pi));
    const double lo = std::max(a, (2 * pi * k - half + phase) / s);
    const double hi = std::min(b, (2 * pi * k + half + phase) / s);
    if (!(lo < hi)) continue;
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * (i + 0.5) / n);
  }
  return out;
}

AnnularSet set_A(double N, int d) {
  if (!(N > 0)) throw ValidationError("set_A needs N > 0");
  if (d < 2) throw ValidationError("set_A needs d >= 2");
  AnnularSet A;
  A.N = N;
  A.d = d;
  const double s = std::sqrt(N), phase = (d - 1) * pi / 4;
  // sqrt N |x| - phase in (2 pi k - pi/3, 2 pi k + pi/3)
  const long k_lo = static_cast<long>(std::floor((0.5 * s - phase - pi / 3) / (2 * pi)));
  const long k_hi = static_cast<long>(std::ceil((2 * s - phase + pi / 3) / (2 * pi)));
  for (long k = k_lo; k <= k_hi; ++k) {
    const double a = std::max(0.5, (2 * pi * k - pi / 3 + phase) / s);
    const double b = std::min(2.0, (2 * pi * k + pi / 3 + phase) / s);
    if (a < b) A.intervals.emplace_back(a, b);
  }
  const double shell = sphere_area(d) / d;
  for (const auto& [a, b] : A.intervals) A.measure += shell * (std::pow(b, d) - std::pow(a, d));
  A.annulus_measure = shell * (std::pow(2.0, d) - std::pow(0.5, d));
  return A;
}

AnnularSet set_A(int j, double gamma, int d, int ceiling) { return set_A(schedule(j, gamma, ceiling).N, d); }

DivergenceRatio divergence_ratio(const FamilyMember& m, const LebesgueExponent& p, double x_mag) {
  const auto A = set_A(m.N(), m.dim());
  if (!A.contains(x_mag)) throw ValidationError("divergence_ratio needs x in A");
  DivergenceRatio r;
  r.x = x_mag;
  const auto v = spectral_apply(m, x_mag, BesselMode::Exact);
  r.value = std::abs(v.value);
  r.value_err = v.err_estimate;
  r.norm = m.lp_norm(p);
  r.ratio = r.value / r.norm;
  r.predicted = std::pow(m.epsilon() * std::sqrt(m.N()), -critical_index(m.dim(), p));
  return r;
}

DivergenceRatio max_divergence_ratio(const FamilyMember& m, const LebesgueExponent& p, int per_interval) {
  const auto A = set_A(m.N(), m.dim());
  const auto xs = A.samples(per_interval);
  if (xs.empty()) throw ValidationError("A is empty");
  DivergenceRatio best;
  for (double x : xs) {
    const auto r = divergence_ratio(m, p, x);
    if (r.ratio > best.ratio) best = r;
  }
  return best;
}

bool DivergenceSweep::within(double rel_tol) const {
  return !fit.degenerate && std::abs(fit.slope - expected) <= rel_tol * std::abs(expected);
}

DivergenceSweep exponent_sweep(const std::vector<double>& eps, double gamma, int d, const LebesgueExponent& p,
                               std::shared_ptr<const SchwartzProfile> psi, FamilyOptions opt, int per_interval) {
  if (eps.size() < 5) throw ValidationError("exponent_sweep needs at least 5 eps values");
  std::vector<FamilyMember> members;
  for (double e : eps) members.emplace_back(Params(d, p, 0, gamma, e), psi, opt);
  return exponent_sweep(members, p, per_interval);
}

DivergenceSweep exponent_sweep(const std::vector<FamilyMember>& members, const LebesgueExponent& p,
                               int per_interval) {
  if (members.size() < 5) throw ValidationError("exponent_sweep needs at least 5 eps values");
  DivergenceSweep s;
  s.d = members.front().dim();
  s.p = p;
  s.gamma = members.front().params().gamma();
  s.expected = -critical_index(s.d, p);
  std::vector<double> xs, ys;
  for (const auto& m : members) {
    if (m.dim() != s.d || m.params().gamma() != s.gamma)
      throw ValidationError("exponent_sweep members must share d and gamma");
    s.eps.push_back(m.epsilon());
    s.rows.push_back(max_divergence_ratio(m, p, per_interval));
    xs.push_back(m.epsilon() * std::sqrt(m.N()));
    ys.push_back(s.rows.back().ratio);
  }
  s.fit = fit_power_law(xs, ys);
  return s;
}

LeadingErrorRow leading_error(const FamilyMember& m, int per_interval) {
  const auto A = set_A(m.N(), m.dim());
  LeadingErrorRow row;
  row.N = m.N();
  row.eps = m.epsilon();
  for (double x : A.samples(per_interval)) {
    const cd lead = spectral_apply(m, x, BesselMode::Leading).value;
    const cd exact = spectral_apply(m, x, BesselMode::Exact).value;
    row.main = std::max(row.main, std::abs(lead));
    if (std::abs(exact - lead) >= row.error) {
      row.error = std::abs(exact - lead);
      row.x = x;
    }
  }
  if (row.main == 0) throw ValidationError("A is empty");
  return row;
}

CrossTerm cross_term(int j, int k, double gamma, int d, double x_mag, std::shared_ptr<const SchwartzProfile> psi,
                     int ceiling) {
  check_radius(x_mag);
  const auto mj = schedule_member(j, gamma, d, psi, ceiling);
  const auto mk = schedule_member(k, gamma, d, psi, ceiling);
  CrossTerm c;
  c.j = j;
  c.k = k;
  c.x = x_mag;
  c.cross = std::abs(window_apply(mj, mk, x_mag, MultiplierSource::KnownSpectrum).value);
  c.diagonal = std::abs(window_apply(mj, mj, x_mag, MultiplierSource::KnownSpectrum).value);
  return c;
}

bool BlowupTrajectory::matches_closed_form() const {
  for (std::size_t j = 0; j + 1 < terms.size(); ++j) {
    const bool up = terms[j + 1] > terms[j];
    if (up != (static_cast<int>(j) >= turning_point)) return false;
  }
  return true;
}

BlowupTrajectory blowup_trajectory(int d, const LebesgueExponent& p, double delta, double gamma, int J) {
  if (J < 0 || J > 16) throw ValidationError("blowup_trajectory needs 0 <= J <= 16");
  BlowupTrajectory t;
  t.sigma = sigma(d, p, delta, gamma);
  if (!(t.sigma < 0)) {
    std::string msg = "blowup needs sigma < 0";
    if (critical_index(d, p) > 0) msg += "; gamma must be below gamma_max = " + std::to_string(gamma_max(d, p, delta));
    throw ValidationError(msg);
  }
  // log2 T_j = -j - sigma 2^j, since eps_j = 2^{-2^j}
  for (int j = 0; j <= J; ++j) t.terms.push_back(std::exp2(-j - t.sigma * std::ldexp(1.0, j)));
  // T_{j+1} / T_j = 2^{-1 - sigma 2^j} > 1 iff 2^j > -1/sigma
  while (std::ldexp(1.0, t.turning_point) <= -1 / t.sigma) ++t.turning_point;
  return t;
}

std::vector<BlowupRow> blowup_numerical(int d, const LebesgueExponent& p, double delta, double gamma,
                                        const std::vector<int>& js, int J, std::shared_ptr<const SchwartzProfile> psi,
                                        int per_interval, int ceiling) {
  if (!(sigma(d, p, delta, gamma) < 0)) throw ValidationError("blowup needs sigma < 0");
  std::vector<FamilyMember> members;
  std::vector<double> weights;
  for (int k = 0; k <= J; ++k) {
    members.push_back(schedule_member(k, gamma, d, psi, ceiling, p, delta));
    weights.push_back(std::ldexp(1.0, -k) / members.back().lp_norm(p));
  }
  std::vector<BlowupRow> out;
  for (int j : js) {
    if (j < 0 || j > J) throw ValidationError("blowup_numerical needs 0 <= j <= J");
    const auto& mj = members[j];
    const auto A = set_A(mj.N(), d);
    BlowupRow best;
    best.j = j;
    for (double x : A.samples(per_interval)) {
      cd total = 0;
      double abs_sum = 0, diag = 0;
      for (int k = 0; k <= J; ++k) {
        const cd term = weights[k] * window_apply(mj, members[k], x, MultiplierSource::KnownSpectrum).value;
        total += term;
        abs_sum += std::abs(term);
        if (k == j) diag = std::abs(term);
      }
      if (std::abs(total) > std::abs(best.value) || best.x == 0) {
        best.x = x;
        best.value = total;
        best.diagonal_share = abs_sum > 0 ? diag / abs_sum : 0;
      }
    }
    best.scaled = std::pow(mj.epsilon(), delta) * std::abs(best.value);
    out.push_back(best);
  }
  return out;
}

}  // namespace brlab
