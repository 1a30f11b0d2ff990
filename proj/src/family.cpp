#include "brlab/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/multiprecision/float128.hpp>

#include "brlab/jet.hpp"
#include "brlab/quad/adaptive.hpp"
#include "brlab/quad/gauss_kronrod.hpp"

namespace brlab {

using cd = std::complex<double>;
using std::numbers::pi;

struct FamilyMember::State {
  Params params;
  std::shared_ptr<const SchwartzProfile> psi;
  FamilyOptions opt;
  double eps = 0, N = 0, xc = 0;
  double abs_c = 0;  // |c| (eps N)^{d/2}
  cd pref;           // c (eps N)^{d/2}
  std::optional<RadialProfile> freq_profile, spatial_profile;

  std::mutex mu;
  std::map<std::string, double> norms;
  std::optional<Peak> peak;
  std::once_flag env_once;
  std::optional<ChebyshevTable> env;

  State(const Params& p, std::shared_ptr<const SchwartzProfile> s, FamilyOptions o)
      : params(p), psi(std::move(s)), opt(o) {}

  double convention_factor() const { return psi->convention() == PsiConvention::Even ? 2.0 : 1.0; }
};

namespace {

// Taylor jet of t^alpha at t0
template <int K>
Jet<K> pow_jet(double t0, double alpha) {
  Jet<K> j;
  double binom = 1, tp = std::pow(t0, alpha);
  for (int k = 0; k <= K; ++k) {
    j.c[k] = binom * tp;
    binom *= (alpha - k) / (k + 1);
    tp /= t0;
  }
  return j;
}

template <int K>
Jet<K> differentiate(const Jet<K>& a) {
  Jet<K> r;
  for (int k = 0; k < K; ++k) r.c[k] = (k + 1) * a.c[k + 1];
  return r;
}

constexpr int kIbpOrder = 24;

// |h_m(t)| for m = 0..K with h_0 = amp, h_{m+1} = (h_m / phi')'
template <int K>
std::array<double, K + 1> ibp_chain(const BumpSpec& hat, int d, double inv_eps, double A, double t) {
  const Jet<K> tj = Jet<K>::variable(t);
  Jet<K> h = eval_bump(hat, tj) * pow_jet<K>(t, -0.5 * d);
  const Jet<K> dphi = inv_eps - A / (tj * tj);
  std::array<double, K + 1> out{};
  out[0] = std::abs(h.c[0]);
  for (int m = 1; m <= K; ++m) {
    h = differentiate(h / dphi);
    out[m] = std::abs(h.c[0]);
  }
  return out;
}

using f128 = boost::multiprecision::float128;

}  // namespace

FamilyMember::FamilyMember(const Params& params, std::shared_ptr<const SchwartzProfile> psi, FamilyOptions opt)
    : s_(std::make_shared<State>(params, std::move(psi), opt)) {
  if (!s_->psi) throw ValidationError("family member needs a psi profile");
  State& s = *s_;
  const int d = params.d();
  s.eps = params.epsilon();
  s.N = params.N();
  s.xc = params.x_c();
  const double en = s.eps * s.N;
  s.abs_c = std::pow(2 * pi, -1.0) * std::pow(4 * pi, -0.5 * d) * std::pow(en, 0.5 * d);
  s.pref = s.abs_c * std::polar(1.0, -pi * d / 4);

  const double S = s.psi->s_max();
  const double r_lo = std::sqrt(std::max(0.0, s.N * (1 - s.eps * S)));
  const double r_hi = std::sqrt(s.N * (1 + s.eps * S));
  // |F| r^{d-1} mass outside the window, from the sup of |psi| beyond s_max
  const double tail = s.psi->tail_bound() * en * S * std::max(1.0, std::pow(r_hi, d - 2));
  const double bw = 4 * r_hi / en;
  std::weak_ptr<const State> wst = s_;
  ComplexFn F = [wst](double r) {
    auto st = wst.lock();
    if (!st) throw Error("frequency profile outlived its family member"); 
    return (*st->psi)((st->N - r * r) / (st->eps * st->N));
  };
  s.freq_profile.emplace(d, F, RadialProfile::Window{r_lo, r_hi, tail}, bw, std::vector<double>{std::sqrt(s.N)});

  std::weak_ptr<State> weak = s_;
  ComplexFn f = [weak](double x) {
    auto sp = weak.lock();
    if (!sp) throw Error("spatial profile outlived its family member");
    FamilyMember m(sp);
    try {
      return m.oscillatory(x).value;
    } catch (const QuadratureError& e) {
      return e.best().value;
    }
  };
  const double x_hi = std::max(1.0, s.opt.annulus_outer) * s.xc;
  s.spatial_profile.emplace(RadialProfile(d, f, {0.0, x_hi, 0.0}, std::sqrt(s.N))
                                .with_spectrum({F, r_lo, r_hi, bw, {std::sqrt(s.N)}}));
}

FamilyMember::FamilyMember(std::shared_ptr<State> s) : s_(std::move(s)) {}

const Params& FamilyMember::params() const { return s_->params; }
const SchwartzProfile& FamilyMember::psi() const { return *s_->psi; }
const FamilyOptions& FamilyMember::options() const { return s_->opt; }
const RadialProfile& FamilyMember::freq_profile() const { return *s_->freq_profile; }
const RadialProfile& FamilyMember::spatial_profile() const { return *s_->spatial_profile; }

cd FamilyMember::freq(double r) const { return (*s_->psi)((s_->N - r * r) / (s_->eps * s_->N)); }

QuadResult FamilyMember::spatial_hankel(double x) const {
  const int d = dim();
  auto r = radial_fourier(freq_profile(), d, x, s_->opt.hankel);
  return scaled(r, std::pow(2 * pi, -d));
}

QuadResult FamilyMember::oscillatory_one_sided(double x) const {
  const State& s = *s_;
  const int d = dim();
  const double A = s.N * s.eps * x * x / 4, inv_eps = 1 / s.eps;
  const BumpSpec hat = s.psi->hat();
  ComplexFn amp = [hat, d](double t) { return cd(eval_bump(hat, t) * std::pow(t, -0.5 * d), 0.0); };
  RealFn phi = [inv_eps, A](double t) { return t * inv_eps + A / t; };
  RealFn dphi = [inv_eps, A](double t) { return inv_eps - A / (t * t); };
  try {
    return scaled(integrate_oscillatory(amp, phi, dphi, hat.a, hat.b, s.opt.oscillatory), s.pref);
  } catch (const QuadratureError& e) {
    throw QuadratureError(e.what(), scaled(e.best(), s.pref));
  }
}

QuadResult FamilyMember::oscillatory(double x) const {
  QuadResult r = oscillatory_one_sided(x);
  if (psi().convention() == PsiConvention::Even) {
    r.value = cd(2 * r.value.real(), 0.0);
    r.err_estimate *= 2;
  }
  return r;
}

QuadResult FamilyMember::oscillatory_extended(double x) const {
  const State& s = *s_;
  const int d = dim();
  const BumpSpec hat = s.psi->hat();
  const f128 eps = s.eps, A = f128(s.N) * eps * f128(x) * f128(x) / 4;
  auto dphi = [&](double t) { return std::abs(1 / s.eps - static_cast<double>(A) / (t * t)); };
  // panels of about pi radians of phase
  std::vector<double> edges{hat.a};
  for (double t = hat.a; t < hat.b;) {
    t += std::min(0.05, std::numbers::pi / std::max(dphi(t), dphi(std::min(hat.b, t + 1e-3))));
    edges.push_back(std::min(t, hat.b));
  }
  const f128 abs_tol = f128(1e-32) / f128(static_cast<double>(edges.size()));
  f128 re = 0, im = 0;
  double err = 0;
  long evals = 0;
  for (int part = 0; part < 2; ++part) {
    auto g = [&](f128 t) {
      const f128 ph = t / eps + A / t;
      const f128 a = eval_bump(hat, t) * boost::multiprecision::pow(t, f128(-0.5 * d));
      return a * (part == 0 ? boost::multiprecision::cos(ph) : boost::multiprecision::sin(ph));
    };
    f128& acc = part == 0 ? re : im;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      auto r = integrate_adaptive_gl<f128>(g, f128(edges[i]), f128(edges[i + 1]), f128(1e-30), abs_tol, 1, 20);
      acc += r.value;
      err += r.err_estimate;
      evals += r.evals;
    }
  }
  QuadResult out;
  out.value = cd(static_cast<double>(re), static_cast<double>(im));
  // rounding floor of the quadruple-precision sums
  out.err_estimate = err + 1e-31;
  out.evals = evals;
  out = scaled(out, s.pref);
  if (psi().convention() == PsiConvention::Even) {
    out.value = cd(2 * out.value.real(), 0.0);
    out.err_estimate *= 2;
  }
  return out;
}

double FamilyMember::ibp_bound(double x) const {
  const State& s = *s_;
  const int d = dim();
  const BumpSpec hat = s.psi->hat();
  const double A = s.N * s.eps * x * x / 4, inv_eps = 1 / s.eps;
  std::array<double, kIbpOrder + 1> total{};
  const double tstar = std::sqrt(A * s.eps);
  const bool stationary = tstar >= hat.a && tstar <= hat.b;
  const int panels = 200, order = 12;
  static const auto gl = gauss_legendre<double>(order);
  const double h = (hat.b - hat.a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = hat.a + (p + 0.5) * h;
    for (int i = 0; i < order; ++i) {
      const double t = c + 0.5 * h * gl.first[i];
      if (stationary) {
        total[0] += 0.5 * h * gl.second[i] * eval_bump(hat, t) * std::pow(t, -0.5 * d);
        continue;
      }
      auto chain = ibp_chain<kIbpOrder>(hat, d, inv_eps, A, t);
      for (int m = 0; m <= kIbpOrder; ++m) total[m] += 0.5 * h * gl.second[i] * chain[m];
    }
  }
  double best = total[0];
  if (!stationary)
    for (double v : total)
      if (std::isfinite(v)) best = std::min(best, v);
  // quadrature of a positive integrand: widen slightly to stay an upper bound
  return 1.05 * best * s.abs_c * s.convention_factor();
}

double FamilyMember::magnitude_upper(double x) const {
  QuadResult r;
  try {
    r = oscillatory(x);
  } catch (const QuadratureError& e) {
    r = e.best();
  }
  return std::min(std::abs(r.value) + r.err_estimate, ibp_bound(x));
}

double FamilyMember::magnitude_lower(double x) const {
  QuadResult r;
  bool ok = true;
  try {
    r = oscillatory(x);
  } catch (const QuadratureError& e) {
    r = e.best();
    ok = false;
  }
  if (!ok || !(std::abs(r.value) > 1e3 * r.err_estimate)) r = oscillatory_extended(x);
  return std::max(0.0, std::abs(r.value) - r.err_estimate);
}

namespace {

double value_abs(const FamilyMember& m, double x) { return std::abs(m.tabulated(x)); }

cd direct_one_sided(const FamilyMember& m, double x) {
  try {
    return m.oscillatory_one_sided(x).value;
  } catch (const QuadratureError& e) {
    return e.best().value;
  }
}

template <class F>
double golden_max(F&& f, double a, double b, int iters = 60) {
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-13 * std::abs(b); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

const ChebyshevTable& FamilyMember::envelope_table() const {
  std::call_once(s_->env_once, [this] {
    const double xc = x_c(), k = std::sqrt(N());
    double scale = 0, noise = 0;
    for (int i = 0; i <= 64; ++i) {
      QuadResult r;
      try {
        r = oscillatory_one_sided(xc * (0.4 + 3.6 * i / 64));
      } catch (const QuadratureError& e) {
        r = e.best();
      }
      scale = std::max(scale, std::abs(r.value));
      noise = std::max(noise, r.err_estimate);
    }
    auto g = [&](double x) { return direct_one_sided(*this, x) * std::polar(1.0, -k * x); };
    // out to where the integration by parts bound drops below the table accuracy
    double R = 8 * xc;
    while (R < 200 * xc && ibp_bound(R) > 1e-15 * scale) R *= 1.25;
    const double w = xc * std::min(0.5, 4 * std::sqrt(epsilon()));
    std::vector<double> edges;
    const int n = static_cast<int>(std::ceil(R / w));
    for (int i = 0; i <= n; ++i) edges.push_back(R * i / n);
    ChebyshevTable::Options o;
    // the table cannot be more accurate than the values it interpolates
    o.abs_tol = std::max(1e-12 * scale, 4 * noise);
    o.max_depth = 6;
    s_->env.emplace(g, edges, o);
  });
  return *s_->env;
}

FamilyMember::Snapshot FamilyMember::snapshot() const {
  Snapshot out;
  std::lock_guard<std::mutex> lock(s_->mu);
  out.envelope = s_->env;
  out.norms = s_->norms;
  out.peak = s_->peak;
  return out;
}

void FamilyMember::seed(const Snapshot& snap) const {
  if (snap.envelope) std::call_once(s_->env_once, [&] { s_->env = snap.envelope; });
  std::lock_guard<std::mutex> lock(s_->mu);
  for (const auto& [k, v] : snap.norms) s_->norms.emplace(k, v);
  if (snap.peak && !s_->peak) s_->peak = snap.peak;
}

cd FamilyMember::tabulated(double x) const {
  const auto& t = envelope_table();
  if (!t.contains(x)) {
    try {
      return oscillatory(x).value;
    } catch (const QuadratureError& e) {
      return e.best().value;
    }
  }
  const cd one = t(x) * std::polar(1.0, std::sqrt(N()) * x);
  return psi().convention() == PsiConvention::Even ? cd(2 * one.real(), 0.0) : one;
}

FamilyMember::Peak FamilyMember::peak() const {
  {
    std::lock_guard<std::mutex> lock(s_->mu);
    if (s_->peak) return *s_->peak;
  }
  const double xc = x_c();
  const auto& table = envelope_table();
  auto envelope = [&](double x) { return std::abs(table(x)); };
  // the one-sided representation has a smooth modulus; locate its maximum first
  const int n = 200;
  double best_x = xc, best = -1;
  for (int i = 0; i <= n; ++i) {
    const double x = xc * (0.4 + 4.0 * i / n);
    const double v = envelope(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const double step = 4.0 * xc / n;
  best_x = golden_max(envelope, std::max(0.0, best_x - step), best_x + step);
  Peak pk;
  if (psi().convention() == PsiConvention::OneSided) {
    pk = {best_x, std::abs(direct_one_sided(*this, best_x))};
  } else {
    // |2 Re f_one| oscillates with period 2 pi / sqrt(N); scan a few periods
    const double period = 2 * pi / std::sqrt(N());
    const int per = 24, periods = 6;
    double bx = best_x, bv = -1;
    for (int i = -per * periods; i <= per * periods; ++i) {
      const double x = best_x + period * i / per;
      if (x <= 0) continue;
      const double v = value_abs(*this, x);
      if (v > bv) {
        bv = v;
        bx = x;
      }
    }
    const double h = period / per;
    const double xm = golden_max([&](double x) { return value_abs(*this, x); }, std::max(0.0, bx - h), bx + h);
    QuadResult r;
    try {
      r = oscillatory(xm);
    } catch (const QuadratureError& e) {
      r = e.best();
    }
    pk = {xm, std::abs(r.value)};
  }
  std::lock_guard<std::mutex> lock(s_->mu);
  s_->peak = pk;
  return pk;
}

double FamilyMember::plancherel_l2() const {
  const int d = dim();
  const auto& fp = freq_profile();
  AdaptiveOptions o;
  o.rel_tol = 1e-12;
  std::vector<double> br;
  const double lo = fp.window().r_lo, hi = fp.window().r_hi;
  const int nb = static_cast<int>(std::min(20000.0, std::ceil((hi - lo) * fp.bandwidth() / pi)));
  for (int i = 1; i < nb; ++i) br.push_back(lo + (hi - lo) * i / nb);
  auto g = [&](double r) { return std::norm(freq(r)) * std::pow(r, d - 1); };
  const double v = integrate_adaptive(g, lo, hi, o, br).value;
  return std::sqrt(std::pow(2 * pi, -d) * sphere_area(d) * v);
}

namespace {

// int_lo^hi |f|^p r^{d-1} dr
double power_integral(const FamilyMember& m, double p, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const int d = m.dim();
  const double xc = m.x_c();
  const double half = pi / std::sqrt(m.N());
  std::vector<double> br;
  const double a = std::max(lo, 0.3 * xc), b = std::min(hi, 6.0 * xc);
  if (b > a) {
    const int n = static_cast<int>(std::ceil((b - a) / half));
    for (int i = 0; i <= n; ++i) br.push_back(a + (b - a) * i / n);
  }
  for (double r = std::max(lo, 1e-3 * xc); r < hi; r *= 2) br.push_back(r);
  AdaptiveOptions o;
  o.rel_tol = m.options().lp_rel_tol;
  o.throw_on_failure = false;
  auto g = [&](double r) { return std::pow(value_abs(m, r), p) * std::pow(r, d - 1); };
  return integrate_adaptive(g, lo, hi, o, br).value;
}

double sup_on(const FamilyMember& m, double lo, double hi) {
  const auto pk = m.peak();
  double best = (pk.x >= lo && pk.x <= hi) ? pk.value : 0.0;
  const double step = pi / std::sqrt(m.N()) / 8;
  const int n = static_cast<int>(std::min(20000.0, std::ceil((hi - lo) / step)));
  for (int i = 0; i <= n; ++i) best = std::max(best, value_abs(m, lo + (hi - lo) * i / std::max(n, 1)));
  return best;
}

}  // namespace

double FamilyMember::lp_norm_annulus(const LebesgueExponent& p, double inner, double outer) const {
  const double xc = x_c();
  if (p.is_infinite()) return sup_on(*this, inner * xc, outer * xc);
  const double v = power_integral(*this, p.value(), inner * xc, outer * xc);
  return std::pow(sphere_area(dim()) * v, 1 / p.value());
}

double FamilyMember::lp_norm(const LebesgueExponent& p) const {
  const std::string key = p.str();
  {
    std::lock_guard<std::mutex> lock(s_->mu);
    auto it = s_->norms.find(key);
    if (it != s_->norms.end()) return it->second;
  }
  if (p.reciprocal() > 0.5) throw ValidationError("lp_norm needs p >= 2");
  const double xc = x_c();
  const double r1 = s_->opt.annulus_inner * xc, r2 = s_->opt.annulus_outer * xc;
  double result;
  if (p.is_infinite()) {
    // beyond the critical annulus |f| is bounded by the integration-by-parts estimate
    result = std::max(peak().value, std::max(ibp_bound(r2), magnitude_upper(r1)));
  } else {
    const double q = p.value();
    const int d = dim();
    double inner = power_integral(*this, q, 0.0, r1);
    double middle = power_integral(*this, q, r1, r2);
    // far annulus: ibp_bound is nonincreasing in |x| there
    double far = 0;
    for (int i = 0; i < 60; ++i) {
      const double a = std::ldexp(r2, i), b = 2 * a;
      const double term = std::pow(ibp_bound(a), q) * (std::pow(b, d) - std::pow(a, d)) / d;
      far += term;
      if (term < 1e-20 * (inner + middle)) break;
    }
    result = std::pow(sphere_area(d) * (inner + middle + far), 1 / q);
  }
  std::lock_guard<std::mutex> lock(s_->mu);
  s_->norms[key] = result;
  return result;
}

std::complex<double> f_eps_freq(const FamilyMember& m, double r) {
  if (!(r >= 0)) throw ValidationError("f_eps_freq needs r >= 0");
  return m.freq(r);
}
QuadResult f_eps_spatial_hankel(const FamilyMember& m, double x_mag) { return m.spatial_hankel(x_mag); }
QuadResult f_eps_oscillatory(const FamilyMember& m, double x_mag) {
  if (!(x_mag >= 0)) throw ValidationError("f_eps_oscillatory needs x_mag >= 0");
  return m.oscillatory(x_mag);
}
double lp_norm(const FamilyMember& m, const LebesgueExponent& p) { return m.lp_norm(p); }

bool DecayReport::ok() const {
  return std::none_of(rows.begin(), rows.end(), [](const DecayRow& r) { return r.violation; });
}

DecayReport decay_report(const FamilyMember& m, int M, const std::vector<double>& xs, double ratio_threshold,
                         const DecayReport* constants) {
  DecayReport rep;
  rep.M = M;
  rep.ratio_threshold = ratio_threshold;
  const double eps = m.epsilon(), en = eps * m.N(), base = std::pow(en, 0.5 * m.dim());
  for (double x : xs) {
    DecayRow row;
    row.x = x;
    row.regime = regime(x, eps, m.params().gamma(), ratio_threshold);
    QuadResult r;
    try {
      r = m.oscillatory(x);
    } catch (const QuadratureError& e) {
      r = e.best();
    }
    if (std::abs(r.value) > 2 * r.err_estimate) {
      row.value = std::abs(r.value);
    } else {
      row.value = m.magnitude_upper(x);
      row.is_bound = true;
    }
    switch (row.regime) {
      case Regime::Near:
        row.shape = std::pow(eps, M) * base;
        break;
      case Regime::Critical:
        row.shape = std::sqrt(eps) * base;
        break;
      case Regime::Far:
        row.shape = std::pow(en * x * x, -M) * base;
        break;
    }
    rep.rows.push_back(row);
  }
  auto slot = [](DecayReport& r, Regime g) -> double& {
    return g == Regime::Near ? r.c_near : (g == Regime::Critical ? r.c_critical : r.c_far);
  };
  for (auto& row : rep.rows) {
    double& c = slot(rep, row.regime);
    c = std::max(c, row.value / row.shape);
  }
  if (constants) {
    rep.c_near = constants->c_near;
    rep.c_critical = constants->c_critical;
    rep.c_far = constants->c_far;
  }
  for (auto& row : rep.rows) {
    row.constant = slot(rep, row.regime);
    row.violation = !row.is_bound && row.value > row.constant * row.shape * (1 + 1e-9);
  }
  return rep;
}

double lp_predicted_slope(int d, const LebesgueExponent& p, double gamma) {
  return 0.5 + (1 - gamma) * d / 2 + (gamma / 2 - 1) * d * p.reciprocal();
}

ExponentFit lp_scaling_fit(const std::vector<double>& eps, const LebesgueExponent& p, double gamma, int d,
                           std::shared_ptr<const SchwartzProfile> psi, FamilyOptions opt,
                           std::vector<double>* norms) {
  if (eps.size() < 5) {
    ExponentFit f;
    f.degenerate = true;
    f.note = "epsilon grid needs at least 5 points";
    return f;
  }
  std::vector<double> v;
  for (double e : eps) v.push_back(FamilyMember(Params(d, p, 0.0, gamma, e), psi, opt).lp_norm(p));
  if (norms) *norms = v;
  return fit_power_law(eps, v);
}

std::vector<FamilyMember> schedule_members(int J, int d, const LebesgueExponent& p, double delta, double gamma,
                                           std::shared_ptr<const SchwartzProfile> psi, FamilyOptions opt,
                                           int ceiling) {
  std::vector<FamilyMember> out;
  for (int j = 0; j <= J; ++j) {
    const auto e = schedule(j, gamma, ceiling);
    out.emplace_back(Params(d, p, delta, gamma, e.epsilon), psi, opt);
  }
  return out;
}

FrakPartial frak_F_partial(const std::vector<FamilyMember>& members, int J, const LebesgueExponent& p,
                           double x_mag) {
  if (J < 0 || J >= static_cast<int>(members.size())) throw ValidationError("frak_F_partial: J outside the member list");
  FrakPartial out;
  double ratio = 0;
  for (int j = 0; j <= J; ++j) {
    const auto& m = members[j];
    const double norm = m.lp_norm(p);
    QuadResult r;
    try {
      r = m.oscillatory(x_mag);
    } catch (const QuadratureError& e) {
      r = e.best();
    }
    const double w = std::ldexp(1.0, -j) / norm;
    out.terms.push_back(w * r.value);
    out.value += w * r.value;
    out.err += w * r.err_estimate;
    ratio = m.peak().value / norm;
    out.term_bounds.push_back(std::ldexp(ratio, -j));
  }
  // sup|f_j| / ||f_j||_p is 1 for p = inf and decreases along the schedule otherwise
  out.tail_bound = std::ldexp(p.is_infinite() ? 1.0 : ratio, -J);
  return out;
}

FrakPartial frak_F_partial(int J, const LebesgueExponent& p, double gamma, int d, double x_mag,
                           std::shared_ptr<const SchwartzProfile> psi, int ceiling) {
  if (J > ceiling) throw PrecisionCeilingError(J, ceiling);
  return frak_F_partial(schedule_members(J, d, p, 0.0, gamma, std::move(psi), {}, ceiling), J, p, x_mag);
}

}  // namespace brlab
