#include "brlab/truncop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "brlab/quad/adaptive.hpp"
#include "brlab/quad/bessel.hpp"

namespace brlab {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

std::string bump_name(const char* kind, const BumpSpec& s) {
  std::ostringstream os;
  os << kind << "(" << s.a << "," << s.b << "," << s.c << "," << s.e << "," << s.sharpness << ")";
  return os.str();
}

double origin_prefactor(int d) { return std::pow(2 * pi, -d) * sphere_area(d); }

// (2 pi)^{d/2} 2^delta Gamma(delta + 1), the factor in front of J_a(y) / y^a
double kernel_scale(int d, double delta) {
  return std::pow(2 * pi, d / 2.0) * std::pow(2.0, delta) * std::tgamma(delta + 1);
}

// sup over s of sqrt(s) |J_a(s)|: the first maximum dominates for a > 1/2
double sqrt_weighted_bessel_sup(double a) {
  static std::mutex mu;
  static std::map<double, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(a); it != cache.end()) return it->second;
  double m = std::sqrt(2 / pi);
  for (int i = 1; i <= 40000; ++i) {
    const double s = i * 0.005;
    m = std::max(m, std::sqrt(s) * std::abs(bessel_j(a, s)));
  }
  return cache[a] = 1.01 * m;
}

// int_a^b g(r) dr for a smooth-but-oscillating real or complex g with panels of width w
template <class F>
auto panel_integral(F&& g, double a, double b, double w, double rel_tol, double abs_tol = 0) {
  AdaptiveOptions o;
  o.rel_tol = rel_tol;
  o.abs_tol = abs_tol;
  o.throw_on_failure = false;
  const double n = std::ceil((b - a) / w);
  o.max_intervals = static_cast<int>(std::min(1e7, 64 * n + 1000));
  std::vector<double> breaks;
  if (n > 1)
    for (int i = 1; i < static_cast<int>(n); ++i) breaks.push_back(a + (b - a) * i / n);
  return integrate_adaptive(g, a, b, o, breaks);
}

// int |K_t(r)| phi r^{d-1} over [a, b], bounded through the kernel envelope
double envelope_mass(int d, double delta, double t, double a, double b) {
  if (!(b > a)) return 0;
  auto g = [&](double r) { return br_kernel_envelope(d, delta, t, r) * std::pow(r, d - 1); };
  AdaptiveOptions o;
  o.rel_tol = 1e-4;
  o.throw_on_failure = false;
  std::vector<double> breaks;
  for (double r = std::max(a, 1.0); r < b; r *= 2) breaks.push_back(r);
  return 1.01 * integrate_adaptive(g, a, b, o, breaks).value;
}

RadialProfile tabulated_profile(const FamilyMember& m) {
  const auto& sp = m.spatial_profile();
  return RadialProfile(m.dim(), [m](double r) { return m.tabulated(r); }, sp.window(), sp.bandwidth(),
                       sp.breakpoints());
}

}  // namespace

Cutoff::Cutoff(Kind kind, std::function<double(double)> phi, double lo, double hi, std::string name)
    : kind_(kind), phi_(std::move(phi)), lo_(lo), hi_(hi), name_(std::move(name)) {}

Cutoff Cutoff::ball(BumpSpec s) {
  s.validate();
  if (!(s.has_plateau() && s.c <= 0 && s.e >= 1))
    throw ValidationError("ball cutoff needs a plateau containing [0, 1]");
  return Cutoff(Kind::Ball, [s](double r) { return eval_bump(s, r); }, 0.0, s.b, bump_name("ball", s));
}

Cutoff Cutoff::ball(const DyadicPartition& p) {
  return Cutoff(Kind::Ball, [p](double r) { return 1.0 - p.theta(0.5 * r); }, 0.0, 2.0, "ball(partition)");
}

Cutoff Cutoff::annular(const DyadicPartition& p) {
  return Cutoff(Kind::Annular, [p](double r) { return p.chi(r); }, 0.5, 2.0, "annular(partition)");
}

Cutoff Cutoff::annular(BumpSpec s) {
  s.validate();
  if (!(s.a > 0)) throw ValidationError("annular cutoff must vanish near the origin");
  return Cutoff(Kind::Annular, [s](double r) { return eval_bump(s, r); }, s.a, s.b, bump_name("annular", s));
}

void TruncationSpec::validate() const {
  if (k < 0 || k > kMaxTruncationIndex) throw ValidationError("truncation index k outside [0, 40]");
  if (!(t > 0)) throw ValidationError("Bochner-Riesz scale must be positive");
  if (!(delta >= 0)) throw ValidationError("Bochner-Riesz order must be >= 0");
}

double br_kernel_closed(int d, double delta, double t, double r) {
  const double a = d / 2.0 + delta, y = t * r;
  const double td = std::pow(t, d);
  if (y == 0) return td * std::pow(pi, d / 2.0) * std::tgamma(delta + 1) / std::tgamma(delta + 1 + d / 2.0);
  return td * kernel_scale(d, delta) * bessel_j(a, y) / std::pow(y, a);
}

double br_kernel_envelope(int d, double delta, double t, double r) {
  const double a = d / 2.0 + delta, y = t * std::abs(r);
  const double near = 1 / (std::pow(2.0, a) * std::tgamma(a + 1));
  const double far = y > 0 ? sqrt_weighted_bessel_sup(a) * std::pow(y, -a - 0.5) : near;
  return (1 + 1e-9) * std::pow(t, d) * kernel_scale(d, delta) * std::min(near, far);
}

QuadResult truncated_mean(const TruncationSpec& s, const RadialProfile& f, double x_mag,
                          const MultiplierOptions& opt) {
  s.validate();
  const double sc = s.scale();
  const auto& w = f.window();
  const RadialProfile::Window win{std::max(w.r_lo, sc * s.cutoff.support_lo()),
                                  std::min(w.r_hi, sc * s.cutoff.support_hi()), w.tail_tol};
  if (!(win.r_hi > win.r_lo)) return {};
  const Cutoff cut = s.cutoff;
  auto bps = f.breakpoints();
  bps.push_back(win.r_lo);
  bps.push_back(win.r_hi);
  // the ramps of the cutoff vary on about a tenth of its scale
  const double bw = f.bandwidth() + 8.0 / sc;
  MultiplierOptions o = opt;
  o.use_known_spectrum = false;
  if (f.carrier()) {
    RadialProfile g(
        f.dim(), [f, cut, sc](double r) { return cut(r / sc) * f.envelope(r); }, *f.carrier(), win, bw, bps);
    return br_mean(g, f.dim(), s.delta, s.t, x_mag, o);
  }
  RadialProfile g(f.dim(), [f, cut, sc](double r) { return cut(r / sc) * f(r); }, win, bw, bps);
  return br_mean(g, f.dim(), s.delta, s.t, x_mag, o);
}

QuadResult truncated_mean_origin(const TruncationSpec& s, const RadialProfile& f) {
  s.validate();
  const int d = f.dim();
  const double sc = s.scale();
  const double lo = sc * s.cutoff.support_lo(), hi = sc * s.cutoff.support_hi();
  const auto& w = f.window();
  const double a = std::max(w.r_lo, lo), b = std::min(w.r_hi, hi);
  const double pref = origin_prefactor(d);
  QuadResult out;
  // |f| < tail_tol outside the window
  out.err_estimate = pref * w.tail_tol *
                     (envelope_mass(d, s.delta, s.t, lo, std::min(hi, w.r_lo)) +
                      envelope_mass(d, s.delta, s.t, std::max(lo, w.r_hi), hi));
  if (!(b > a)) return out;
  const Cutoff cut = s.cutoff;
  auto kernel_part = [&](double r) { return br_kernel_closed(d, s.delta, s.t, r) * cut(r / sc) * std::pow(r, d - 1); };
  const double width = pi / (s.t + f.bandwidth() + 1e-300);
  if (f.carrier()) {
    const auto& c = *f.carrier();
    ComplexFn amp = [&](double r) { return kernel_part(r) * f.envelope(r); };
    OscillatoryOptions oo;
    oo.throw_on_failure = false;
    oo.scan_points = 16;
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / std::min(width, pi / s.t))));
    for (int i = 0; i < n; ++i) {
      const double u = a + (b - a) * i / n, v = (i + 1 == n) ? b : a + (b - a) * (i + 1) / n;
      const auto r = integrate_oscillatory(amp, c.theta, c.dtheta, u, v, oo);
      out.value += r.value;
      out.err_estimate += pref * r.err_estimate;
      out.evals += r.evals;
      out.converged = out.converged && r.converged;
    }
    out.value *= pref;
    return out;
  }
  auto r = panel_integral([&](double x) { return kernel_part(x) * f(x); }, a, b, width, 1e-10);
  out.value = pref * r.value;
  out.err_estimate += pref * r.err_estimate;
  out.evals = r.evals;
  out.converged = r.converged;
  return out;
}

QuadResult truncated_mean_origin(const TruncationSpec& s, const FamilyMember& m) {
  s.validate();
  const int d = m.dim();
  const double sc = s.scale();
  const double a = sc * s.cutoff.support_lo(), b = sc * s.cutoff.support_hi();
  const double pref = origin_prefactor(d);
  const auto& table = m.envelope_table();
  const double conv = m.psi().convention() == PsiConvention::Even ? 2.0 : 1.0;
  const double peak = m.peak().value;
  // beyond the table the integration by parts bound replaces the values
  const double R = table.hi();
  QuadResult out;
  const double c_hi = std::min(b, R);
  if (c_hi > a) {
    const Cutoff cut = s.cutoff;
    auto g = [&](double r) {
      return br_kernel_closed(d, s.delta, s.t, r) * cut(r / sc) * std::pow(r, d - 1) * m.tabulated(r);
    };
    // values carry the table error, so the quadrature need not go below it
    const double value_err = std::max(conv * table.max_error(), 1e-15 * peak);
    const double floor = value_err * envelope_mass(d, s.delta, s.t, a, c_hi);
    auto r = panel_integral(g, a, c_hi, pi / (s.t + std::sqrt(m.N())), 1e-10, 0.1 * floor);
    out.value = pref * r.value;
    out.evals = r.evals;
    out.converged = r.converged;
    out.err_estimate = pref * (r.err_estimate + floor);
  }
  double tail = 0;
  for (double u = std::max(a, R); u < b; u *= 1.25) {
    const double v = std::min(b, 1.25 * u);
    tail += std::max(m.ibp_bound(u), m.ibp_bound(v)) * envelope_mass(d, s.delta, s.t, u, v);
  }
  out.err_estimate += pref * tail;
  return out;
}

QuadResult truncated_mean(const TruncationSpec& s, const FamilyMember& m, double x_mag) {
  if (x_mag == 0) return truncated_mean_origin(s, m);
  return truncated_mean(s, tabulated_profile(m), x_mag);
}

QuadResult truncated_mean(const TruncationSpec& s, const std::vector<FamilyMember>& members,
                          const LebesgueExponent& p, double x_mag) {
  QuadResult out;
  for (std::size_t j = 0; j < members.size(); ++j) {
    const double w = std::ldexp(1.0, -static_cast<int>(j)) / members[j].lp_norm(p);
    const auto r = truncated_mean(s, members[j], x_mag);
    out.value += w * r.value;
    out.err_estimate += w * r.err_estimate;
    out.evals += r.evals;
    out.converged = out.converged && r.converged;
  }
  return out;
}

bool RegimeReport::ok() const {
  return std::none_of(rows.begin(), rows.end(), [](const RegimeRow& r) { return r.violation; });
}

bool RegimeReport::covers_all_regimes() const {
  bool seen[3] = {false, false, false};
  for (const auto& r : rows) seen[static_cast<int>(r.regime)] = true;
  return seen[0] && seen[1] && seen[2];
}

RegimeReport regime_bound_check(const TruncationSpec& annular, const FamilyMember& m, int M,
                                const std::vector<int>& ks, double x_mag, double factor, double ratio_threshold) {
  if (annular.cutoff.kind() != Cutoff::Kind::Annular) throw ValidationError("regime check needs an annular cutoff");
  if (M < 0) throw ValidationError("regime check needs M >= 0");
  RegimeReport rep;
  rep.M = M;
  rep.factor = factor;
  const double eps = m.epsilon(), N = m.N(), d = m.dim();
  const double base = std::pow(N * eps, d / 2);
  for (int k : ks) {
    RegimeRow row;
    row.k = k;
    const double sc = std::ldexp(1.0, k);
    row.regime = regime(sc, eps, m.params().gamma(), ratio_threshold);
    const auto r = truncated_mean(annular.with_k(k), m, x_mag);
    row.value = r.value;
    row.err = r.err_estimate;
    row.is_bound = !(std::abs(r.value) > 2 * r.err_estimate);
    row.magnitude = std::abs(r.value) + (row.is_bound ? r.err_estimate : 0.0);
    const double vol = std::pow(sc, d) * base;
    switch (row.regime) {
      case Regime::Near:
        row.shape = std::pow(eps, M) * vol;
        break;
      case Regime::Critical:
        row.shape = std::pow(N, -0.5 * M) * vol;
        break;
      case Regime::Far:
        row.shape = std::pow(N * eps * sc * sc, -M) * vol;
        break;
    }
    rep.rows.push_back(row);
  }
  std::sort(rep.rows.begin(), rep.rows.end(), [](const RegimeRow& x, const RegimeRow& y) { return x.k < y.k; });
  auto constant = [&](Regime g) -> double& {
    return g == Regime::Near ? rep.c_near : (g == Regime::Critical ? rep.c_critical : rep.c_far);
  };
  auto spread = [&](Regime g) -> double& {
    return g == Regime::Near ? rep.spread_near : (g == Regime::Critical ? rep.spread_critical : rep.spread_far);
  };
  for (Regime g : {Regime::Near, Regime::Critical, Regime::Far}) {
    int seen = 0;
    double lo = INFINITY, hi = 0;
    for (auto& row : rep.rows) {
      if (row.regime != g) continue;
      row.fit_row = (seen++ % 2 == 0);
      if (row.fit_row) constant(g) = std::max(constant(g), row.magnitude / row.shape);
      if (!row.is_bound) {
        lo = std::min(lo, row.magnitude / row.shape);
        hi = std::max(hi, row.magnitude / row.shape);
      }
    }
    spread(g) = hi > 0 ? hi / lo : 0;
  }
  for (auto& row : rep.rows) {
    row.constant = constant(row.regime);
    row.violation = row.magnitude > factor * row.constant * row.shape;
  }
  return rep;
}

namespace {

CutoffSequence cutoff_sequence(const std::vector<FamilyMember>& members, const LebesgueExponent& p, double delta,
                               double t, double x_mag, const std::vector<int>& ks, const Cutoff& phi) {
  CutoffSequence seq;
  seq.cutoff = phi.name();
  TruncationSpec s{0, phi, t, delta};
  for (int k : ks) {
    const auto r = truncated_mean(s.with_k(k), members, p, x_mag);
    seq.values.push_back(r.value);
    seq.errs.push_back(r.err_estimate);
  }
  std::vector<double> x, y;
  double last_diff = 0;
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    const double diff = std::abs(seq.values[i + 1] - seq.values[i]);
    last_diff = diff;
    if (diff > 2 * (seq.errs[i] + seq.errs[i + 1])) {
      x.push_back(std::ldexp(1.0, ks[i]));
      y.push_back(diff);
    }
  }
  seq.resolved_differences = static_cast<int>(x.size());
  if (x.size() >= 3) {
    seq.cauchy_fit = fit_power_law(x, y);
    seq.rate = -seq.cauchy_fit.slope;
  } else {
    seq.cauchy_fit.degenerate = true;
    seq.cauchy_fit.note = "fewer than 3 resolved Cauchy differences";
  }
  seq.limit = seq.values.back();
  seq.limit_err = seq.errs.back() + last_diff;
  return seq;
}

}  // namespace

WelldefReport welldef_probe(const std::vector<FamilyMember>& members, const LebesgueExponent& p, double delta,
                            double t, double x_mag, const std::vector<int>& ks, const Cutoff& phi_a,
                            const Cutoff& phi_b) {
  if (phi_a.kind() != Cutoff::Kind::Ball || phi_b.kind() != Cutoff::Kind::Ball)
    throw ValidationError("well-definedness probe needs ball cutoffs");
  if (phi_a.name() == phi_b.name()) throw ValidationError("well-definedness probe needs two distinct cutoffs");
  if (ks.size() < 2 || members.empty()) throw ValidationError("well-definedness probe needs two k and one member");
  WelldefReport rep;
  rep.ks = ks;
  rep.a = cutoff_sequence(members, p, delta, t, x_mag, ks, phi_a);
  rep.b = cutoff_sequence(members, p, delta, t, x_mag, ks, phi_b);
  rep.limit_difference = std::abs(rep.a.limit - rep.b.limit);
  rep.combined_err = rep.a.limit_err + rep.b.limit_err;
  rep.stabilized = !rep.a.cauchy_fit.degenerate && !rep.b.cauchy_fit.degenerate && rep.a.rate > 0 && rep.b.rate > 0;
  rep.cutoff_independent = rep.limit_difference <= rep.combined_err;
  return rep;
}

double typical_envelope(int d, double p, double r) {
  const double s = 1 + r * r;
  return std::pow(s, -d / (2 * p)) * std::pow(std::log1p(r * r), -2 / p);
}

RadialProfile chirp_profile(int d, double p, bool chirped, double r_hi) {
  if (!(p >= 1)) throw ValidationError("chirp profile needs p >= 1");
  if (!(r_hi > 0)) throw ValidationError("chirp profile needs r_hi > 0");
  ComplexFn F = [d, p](double r) { return cd(typical_envelope(d, p, r), 0.0); };
  const RadialProfile::Window w{0.0, r_hi, typical_envelope(d, p, r_hi)};
  if (!chirped) return RadialProfile(d, F, w, 0.0);
  RadialProfile::Carrier c{[](double r) { return 0.5 * r * r; }, [](double r) { return r; }};
  return RadialProfile(d, F, c, w, 0.0);
}

bool ChirpReport::monotone() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j].lower() > rows[i].upper()) return false;
    if (i + 1 < rows.size() && rows[i].resolved && rows[i + 1].resolved && !(rows[i + 1].upper() < rows[i].lower()))
      return false;
  }
  return true;
}

bool ChirpReport::decays(double drop) const {
  if (rows.size() < 2 || !rows.front().resolved) return false;
  return monotone() && rows.back().upper() <= drop * rows.front().lower();
}

ChirpReport chirp_truncation_decay(const RadialProfile& f, double delta, double t, const std::vector<int>& ks,
                                   const Cutoff& annular, double x_mag) {
  if (annular.kind() != Cutoff::Kind::Annular) throw ValidationError("chirp decay needs an annular cutoff");
  ChirpReport rep;
  rep.chirped = f.carrier().has_value();
  TruncationSpec s{0, annular, t, delta};
  for (int k : ks) {
    const auto r = x_mag == 0 ? truncated_mean_origin(s.with_k(k), f) : truncated_mean(s.with_k(k), f, x_mag);
    ChirpRow row;
    row.k = k;
    row.value = r.value;
    row.err = r.err_estimate;
    row.resolved = std::abs(r.value) > 2 * r.err_estimate;
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

template <class Eval>
AnnularSumCheck annular_sum(const DyadicPartition& p, double delta, double t, int k_top, Eval&& eval) {
  const int b = p.cutoff_index();
  if (k_top < b) throw ValidationError("annular sum needs K' >= the partition's base index");
  if (b < 1) throw ValidationError("annular sum needs a base index >= 1");
  AnnularSumCheck c;
  const TruncationSpec ball{0, Cutoff::ball(p), t, delta};
  const auto top = eval(ball.with_k(k_top)), circ = eval(ball.with_k(b - 1));
  c.lhs = top.value - circ.value;
  c.err = top.err_estimate + circ.err_estimate;
  const TruncationSpec ann{0, Cutoff::annular(p), t, delta};
  for (int n = b; n <= k_top; ++n) {
    const auto r = eval(ann.with_k(n));
    c.rhs += r.value;
    c.err += r.err_estimate;
  }
  return c;
}

}  // namespace

AnnularSumCheck annular_sum_check(const DyadicPartition& p, const FamilyMember& m, double delta, double t,
                                  int k_top, double x_mag) {
  return annular_sum(p, delta, t, k_top, [&](const TruncationSpec& s) { return truncated_mean(s, m, x_mag); });
}

AnnularSumCheck annular_sum_check(const DyadicPartition& p, const RadialProfile& f, double delta, double t,
                                  int k_top, double x_mag) {
  return annular_sum(p, delta, t, k_top, [&](const TruncationSpec& s) {
    return x_mag == 0 ? truncated_mean_origin(s, f) : truncated_mean(s, f, x_mag);
  });
}

}  // namespace brlab
