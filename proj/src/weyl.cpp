#include "brlab/weyl.hpp"

#include <algorithm>
#include <cmath>

#include "brlab/error.hpp"
#include "brlab/params.hpp"
#include "brlab/quad/adaptive.hpp"
#include "brlab/quad/chebyshev.hpp"

namespace brlab {

namespace {

constexpr double kInnerRelTol = 1e-11;
// t + u is rounded at the level of |t| eps, which bounds the attainable accuracy for narrow profiles
constexpr int kInnerMaxIntervals = 2000;

// int_A^B u^{alpha-1} g(u) du, through v = u^alpha when the weight is singular
template <class G>
BasicQuadResult<double> weighted_integral(double alpha, G&& g, double A, double B, double rel_tol) {
  AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  opt.throw_on_failure = false;
  opt.max_intervals = kInnerMaxIntervals;
  constexpr int kPanels = 16;
  if (!(A < B)) return {};
  if (alpha < 1) {
    const double va = std::pow(A, alpha), vb = std::pow(B, alpha);
    std::vector<double> breaks;
    for (int i = 1; i < kPanels; ++i) breaks.push_back(va + (vb - va) * i / kPanels);
    auto h = [&](double v) { return g(std::pow(v, 1 / alpha)) / alpha; };
    return integrate_adaptive(h, va, vb, opt, breaks);
  }
  std::vector<double> breaks;
  for (int i = 1; i < kPanels; ++i) breaks.push_back(A + (B - A) * i / kPanels);
  auto h = [&](double u) { return std::pow(u, alpha - 1) * g(u); };
  return integrate_adaptive(h, A, B, opt, breaks);
}

bool is_integer(double nu) { return nu == std::floor(nu); }

// breaks for int_0^hi of a function concentrated on [lo, hi] with algebraic decay below lo
std::vector<double> graded_breaks(double lo, double hi) {
  std::vector<double> b;
  const double w = hi - lo;
  for (int i = 0; i <= 8; ++i) b.push_back(lo + w * i / 8);
  for (double s = w; lo - s > 0; s *= 2) b.push_back(lo - s);
  std::sort(b.begin(), b.end());
  return b;
}

}  // namespace

CompactProfile::CompactProfile(JetFn f, double lo, double hi, std::string name)
    : f_(std::move(f)), lo_(lo), hi_(hi), name_(std::move(name)) {
  if (!(lo < hi)) throw ValidationError("compact profile needs lo < hi");
}

CompactProfile CompactProfile::bump(const BumpSpec& s, double center, double scale, std::string name) {
  s.validate();
  if (!(scale > 0)) throw ValidationError("bump scale must be positive");
  auto f = [s, center, scale](const WeylJet& t) { return eval_bump(s, (t - center) * (1 / scale)); };
  return CompactProfile(f, center + scale * s.a, center + scale * s.b, std::move(name));
}

WeylJet CompactProfile::jet(double t) const {
  if (t <= lo_ || t >= hi_) return WeylJet(0.0);
  return f_(WeylJet::variable(t));
}

double CompactProfile::operator()(double t) const { return jet(t).value(); }

double CompactProfile::derivative(double t, int n) const {
  if (n < 0 || n > kWeylJetOrder) throw ValidationError("derivative order out of range");
  return jet(t).derivative(n);
}

double chi_minus(double nu, double x) {
  if (!(nu > -1)) throw ValidationError("chi_minus needs nu > -1");
  if (!(x < 0)) return 0;
  return std::pow(-x, nu) / std::tgamma(nu + 1);
}

QuadResult weyl_derivative(const CompactProfile& psi, double nu, double t) {
  if (!std::isfinite(nu) || !std::isfinite(t)) throw ValidationError("weyl_derivative needs finite nu and t");
  QuadResult out;
  if (t >= psi.hi()) return out;
  if (is_integer(nu) && nu >= 0) {
    const int n = static_cast<int>(nu);
    out.value = (n % 2 ? -1.0 : 1.0) * psi.derivative(t, n);
    return out;
  }
  int nu0 = 0;
  if (nu > 0) nu0 = static_cast<int>(std::floor(nu)) + 1;
  if (nu0 > kWeylJetOrder) throw ValidationError("weyl_derivative order exceeds the jet order");
  const double B = psi.hi() - t;
  BasicQuadResult<double> r;
  double s = 0;
  if (t < psi.lo()) {
    // below the support, nu0 integrations by parts give Gamma(-nu)^-1 int u^{-nu-1} Psi(t+u) du,
    // which avoids the cancellation in the differentiated form
    const double A = psi.lo() - t;
    std::vector<double> breaks;
    for (int i = 1; i <= 30; ++i) breaks.push_back(A + (B - A) * std::ldexp(1.0, -i));
    AdaptiveOptions opt;
    opt.rel_tol = kInnerRelTol;
    opt.throw_on_failure = false;
    opt.max_intervals = kInnerMaxIntervals;
    r = integrate_adaptive([&](double u) { return std::pow(u, -nu - 1) * psi(t + u); }, A, B, opt, breaks);
    s = 1 / std::tgamma(-nu);
  } else {
    const double alpha = nu0 - nu;
    auto g = [&](double u) { return psi.derivative(t + u, nu0); };
    r = weighted_integral(alpha, g, 0.0, B, kInnerRelTol);
    s = (nu0 % 2 ? -1.0 : 1.0) / std::tgamma(alpha);
  }
  out.value = s * r.value;
  out.err_estimate = std::abs(s) * r.err_estimate;
  out.evals = r.evals;
  out.converged = r.converged;
  return out;
}

double reconstruction_check(const CompactProfile& psi, double nu, const std::vector<double>& ts) {
  if (!(nu > 0 && nu <= 3)) throw ValidationError("reconstruction_check needs 0 < nu <= 3");
  if (ts.empty()) return 0;
  const double t_min = std::min(*std::min_element(ts.begin(), ts.end()), psi.lo());
  const double hi = psi.hi();
  auto dnu = [&](double s) { return weyl_derivative(psi, nu, s).value; };
  double scale = 0;
  for (int i = 0; i <= 64; ++i) scale = std::max(scale, std::abs(dnu(t_min + (hi - t_min) * i / 64)));
  std::vector<double> edges;
  constexpr int kEdges = 32;
  for (int i = 0; i <= kEdges; ++i) edges.push_back(t_min + (hi - t_min) * i / kEdges);
  const ChebyshevTable table(dnu, edges, {.degree = 16, .abs_tol = 1e-12 * std::max(1.0, scale), .max_depth = 10});

  const double g_nu = std::tgamma(nu);
  double worst = 0;
  for (double t : ts) {
    double v = 0;
    if (t < hi) {
      auto g = [&](double u) { return table(t + u).real(); };
      v = weighted_integral(nu, g, 0.0, hi - t, 1e-12).value / g_nu;
    }
    worst = std::max(worst, std::abs(v - psi(t)));
  }
  return worst;
}

double weyl_weighted_mass(const CompactProfile& psi, double nu, double power) {
  const double hi = psi.hi();
  const double lo = std::max(psi.lo(), 0.0);
  AdaptiveOptions opt;
  opt.rel_tol = 1e-8;
  opt.throw_on_failure = false;
  auto h = [&](double t) { return std::pow(t, power) * std::abs(weyl_derivative(psi, nu, t).value); };
  return integrate_adaptive(h, 0.0, hi, opt, graded_breaks(lo, hi)).value;
}

CompactProfile psi_j_profile(int j, double gamma, const BumpSpec& eta, int ceiling) {
  const auto e = schedule(j, gamma, ceiling);
  return CompactProfile::bump(eta, e.N, e.N * e.epsilon, "psi_" + std::to_string(j));
}

double psi_j_window(int j, double gamma, double t, int ceiling) {
  const auto e = schedule(j, gamma, ceiling);
  return eval_bump(eta_spec(), (t - e.N) / (e.N * e.epsilon));
}

WeylBoundReport psi_j_weyl_bound_check(int j, double gamma, double delta, int grid, int ceiling) {
  if (!(delta >= 0 && delta < 2)) throw ValidationError("psi_j_weyl_bound_check needs 0 <= delta < 2");
  if (grid < 2) throw ValidationError("psi_j_weyl_bound_check needs a grid of at least 2 points");
  const auto e = schedule(j, gamma, ceiling);
  const auto psi = psi_j_profile(j, gamma, eta_spec(), ceiling);
  WeylBoundReport rep;
  rep.j = j;
  rep.N = e.N;
  rep.eps = e.epsilon;
  rep.delta = delta;
  const double ne = e.N * e.epsilon;
  // tau = (t - N) / (N eps); the bound's ratio decays like |tau|^-2 below the support
  const double tau_lo = std::max(-e.N / ne, -40.0), tau_hi = (psi.hi() - e.N) / ne;
  for (int i = 0; i < grid; ++i) {
    const double tau = tau_lo + (tau_hi - tau_lo) * i / (grid - 1);
    const double t = e.N + ne * tau;
    const double v = weyl_derivative(psi, delta + 1, t).value.real();
    rep.ts.push_back(t);
    rep.values.push_back(v);
    if (t <= e.N + 1) {
      const double bound = std::pow(ne, -delta - 1) * std::pow(1 + std::abs(tau), -delta);
      rep.constant = std::max(rep.constant, std::abs(v) / bound);
    } else {
      rep.beyond_support = std::max(rep.beyond_support, std::abs(v));
    }
  }
  return rep;
}

SubordinationResult subordination_check(const RadialProfile& f, const CompactProfile& psi, double delta, int d,
                                        double x_mag, const MultiplierOptions& opt) {
  if (!(delta >= 0)) throw ValidationError("subordination_check needs delta >= 0");
  if (!(psi.lo() >= 0)) throw ValidationError("subordination_check needs Psi supported in [0, inf)");
  const double lo = psi.lo(), hi = psi.hi();
  SubordinationResult out;

  RadialMultiplier m;
  m.m = [&psi](double s) -> std::complex<double> { return psi(s); };
  m.s_lo = lo;
  m.s_hi = hi;
  m.breakpoints = {lo, hi};
  m.rho_bandwidth = 16 * std::sqrt(hi) / (hi - lo);
  const auto l = apply_multiplier(m, f, d, x_mag, opt);
  out.lhs = l.value;
  out.lhs_err = l.err_estimate;

  // S_{sqrt t} f = O(t^{d/2}) as t -> 0, so the integrand vanishes there
  const double a = 1e-10 * hi;
  AdaptiveOptions ao;
  ao.rel_tol = 1e-7;
  ao.throw_on_failure = false;
  auto h = [&](double t) -> std::complex<double> {
    const double w = std::pow(t, delta) * weyl_derivative(psi, delta + 1, t).value.real();
    if (w == 0) return 0.0;
    return w * br_mean(f, d, delta, std::sqrt(t), x_mag, opt).value;
  };
  const auto r = integrate_adaptive(h, a, hi, ao, graded_breaks(std::max(lo, a), hi));
  const double g = std::tgamma(delta + 1);
  out.rhs = r.value / g;
  out.rhs_err = r.err_estimate / g;
  return out;
}

}  // namespace brlab
