#include "brlab/quad/radial.hpp"

#include <algorithm>
#include <numbers>

namespace brlab {

double sphere_area(int d) {
  if (d < 1) throw ValidationError("dimension must be >= 1");
  return 2 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<std::complex<double>> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw ValidationError("spline needs >= 2 matching samples");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i])) throw ValidationError("spline grid must be strictly increasing");
  for (auto& v : y_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ValidationError("non-finite sample");
  // natural spline second derivatives by the tridiagonal sweep
  m_.assign(n, 0.0);
  if (n < 3) return;
  std::vector<double> c(n, 0.0);
  std::vector<std::complex<double>> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    const double a = h0 / 6, b = (h0 + h1) / 3, cc = h1 / 6;
    const std::complex<double> r = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    const double den = b - a * c[i - 1];
    c[i] = cc / den;
    d[i] = (r - a * d[i - 1]) / den;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = d[i] - c[i] * m_[i + 1];
    if (i == 1) break;
  }
}

std::complex<double> CubicSpline::operator()(double t) const {
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  const std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin() - 1;
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
  return A * y_[i] + B * y_[i + 1] + ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * (h * h / 6);
}

RadialProfile::RadialProfile(int d, ComplexFn g, Window w, double bandwidth, std::vector<double> breakpoints)
    : d_(d), g_(std::move(g)), w_(w), bandwidth_(bandwidth), breaks_(std::move(breakpoints)) {
  if (d < 1) throw ValidationError("dimension must be >= 1");
  if (!(w.r_lo >= 0 && w.r_hi > w.r_lo)) throw ValidationError("radial window must satisfy 0 <= r_lo < r_hi");
}

RadialProfile::RadialProfile(int d, ComplexFn envelope, Carrier carrier, Window w, double envelope_bandwidth,
                             std::vector<double> breakpoints)
    : RadialProfile(d, std::move(envelope), w, envelope_bandwidth, std::move(breakpoints)) {
  carrier_ = std::move(carrier);
}

RadialProfile RadialProfile::from_samples(int d, std::vector<double> r, std::vector<std::complex<double>> g,
                                          double tail_tol, double bandwidth) {
  auto sp = std::make_shared<const CubicSpline>(std::move(r), std::move(g));
  Window w{sp->x().front(), sp->x().back(), tail_tol};
  const CubicSpline* raw = sp.get();
  RadialProfile p(d, [raw](double t) { return (*raw)(t); }, w, bandwidth);
  p.spline_ = sp;
  return p;
}

std::complex<double> RadialProfile::envelope(double r) const {
  if (r < w_.r_lo || r > w_.r_hi) return 0.0;
  return g_(r);
}

std::complex<double> RadialProfile::operator()(double r) const {
  if (r < w_.r_lo || r > w_.r_hi) return 0.0;
  if (!carrier_) return g_(r);
  const double th = carrier_->theta(r);
  return g_(r) * std::complex<double>(std::cos(th), std::sin(th));
}

namespace {

double phase_rate(const RadialProfile& g, double rho) {
  double rate = rho + g.bandwidth();
  if (g.carrier()) {
    const auto& w = g.window();
    rate += std::max(std::abs(g.carrier()->dtheta(w.r_lo)), std::abs(g.carrier()->dtheta(w.r_hi)));
  }
  return rate;
}

std::vector<double> initial_breaks(const RadialProfile& g, double lo, double hi, double rate) {
  std::vector<double> br;
  const double n = std::min(50000.0, std::ceil((hi - lo) * rate / std::numbers::pi));
  for (int i = 1; i < static_cast<int>(n); ++i) br.push_back(lo + (hi - lo) * i / n);
  for (double b : g.breakpoints())
    if (b > lo && b < hi) br.push_back(b);
  return br;
}

}  // namespace

QuadResult radial_fourier(const RadialProfile& g, int d, double rho, const RadialOptions& opt) {
  if (d < 1) throw ValidationError("dimension must be >= 1");
  if (!(rho >= 0)) throw ValidationError("radial_fourier needs rho >= 0");
  if (!g.tail_certified()) throw ValidationError("radial profile tail is not certified");
  if (g.dim() != d) throw ValidationError("radial profile dimension mismatch");
  const double lo = g.window().r_lo, hi = g.window().r_hi;
  AdaptiveOptions ao;
  ao.rel_tol = opt.rel_tol;
  ao.abs_tol = opt.abs_tol;
  ao.max_intervals = opt.max_intervals;
  ao.throw_on_failure = false;

  QuadResult out;
  if (rho == 0) {
    auto f = [&](double r) { return g(r) * std::pow(r, d - 1); };
    out = to_complex(integrate_adaptive(f, lo, hi, ao, initial_breaks(g, lo, hi, phase_rate(g, 0))));
    out = scaled(out, sphere_area(d));
    out.err_estimate += g.window().tail_tol;
    return out;
  }
  const double nu = (d - 2) / 2.0;
  const double pref = (d == 1) ? 2.0 : std::pow(2 * std::numbers::pi, d / 2.0) * std::pow(rho, -nu);
  auto kernel = [&](double r) {
    if (d == 1) return std::cos(r * rho);
    return bessel_j(nu, r * rho) * std::pow(r, d / 2.0);
  };

  const bool smooth_env = g.carrier().has_value() || g.bandwidth() < 0.25 * rho;
  const double rs = std::max(lo, (opt.filon_threshold + nu * nu) / rho);
  const bool use_filon = opt.allow_filon && smooth_env && !g.sampled() && rs < hi &&
                         (hi - rs) * rho > 4 * std::numbers::pi;

  const double split = use_filon ? rs : hi;
  if (split > lo) {
    auto f = [&](double r) { return g(r) * kernel(r); };
    out += to_complex(integrate_adaptive(f, lo, split, ao, initial_breaks(g, lo, split, phase_rate(g, rho))));
  }
  if (use_filon) {
    const double c0 = (d == 1) ? 0.0 : (nu / 2 + 0.25) * std::numbers::pi;
    const auto& car = g.carrier();
    OscillatoryOptions oo;
    oo.rel_tol = opt.rel_tol;
    oo.abs_tol = opt.abs_tol;
    oo.throw_on_failure = false;
    for (int sgn : {+1, -1}) {
      ComplexFn amp = [&, sgn](double r) -> std::complex<double> {
        std::complex<double> h(0.5, 0.0);
        if (d > 1) {
          const double z = r * rho;
          double P, Q;
          if (!bessel_detail::hankel_pq(nu, z, P, Q))
            throw QuadratureError("Hankel expansion unavailable at z=" + std::to_string(z), {});
          h = 0.5 * std::sqrt(2 / (std::numbers::pi * z)) * std::complex<double>(P, sgn * Q) *
              std::complex<double>(std::cos(c0), -sgn * std::sin(c0)) * std::pow(r, d / 2.0);
        }
        return g.envelope(r) * h;
      };
      RealFn ph = [&, sgn](double r) { return (car ? car->theta(r) : 0.0) + sgn * rho * r; };
      RealFn dph = [&, sgn](double r) { return (car ? car->dtheta(r) : 0.0) + sgn * rho; };
      out += integrate_oscillatory(amp, ph, dph, rs, hi, oo);
    }
  }
  out = scaled(out, pref);
  out.err_estimate += g.window().tail_tol;
  return out;
}

HankelPlan::HankelPlan(const RadialProfile& g, int d, double rho_max, double phase_per_panel)
    : d_(d), rho_max_(rho_max), tail_err_(g.window().tail_tol) {
  if (!g.tail_certified()) throw ValidationError("radial profile tail is not certified");
  if (g.dim() != d) throw ValidationError("radial profile dimension mismatch");
  if (!(phase_per_panel > 0)) throw ValidationError("phase per panel must be positive");
  const double lo = g.window().r_lo, hi = g.window().r_hi;
  std::vector<double> edges{lo, hi};
  const double rate = phase_rate(g, rho_max);
  const double n = std::max(1.0, std::ceil((hi - lo) * rate / phase_per_panel));
  for (int i = 1; i < static_cast<int>(n); ++i) edges.push_back(lo + (hi - lo) * i / n);
  for (double b : g.breakpoints())
    if (b > lo && b < hi) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  panels_ = edges.size() - 1;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double c = 0.5 * (edges[p] + edges[p + 1]), h = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < 21; ++i) {
      const int k = i < 10 ? i : (i == 10 ? 10 : 20 - i);
      const double x = i < 10 ? -gk21::xgk[k] : (i == 10 ? 0.0 : gk21::xgk[k]);
      const double r = c + h * x;
      r_.push_back(r);
      wk_.push_back(gk21::wgk[k] * h);
      wg_.push_back((k % 2 == 1) ? gk21::wg[k / 2] * h : 0.0);
      const auto v = g(r);
      gw_.push_back(v * std::pow(r, d / 2.0));
      g0_.push_back(v * std::pow(r, d - 1));
    }
  }
}

QuadResult HankelPlan::transform(double rho) const {
  if (!(rho >= 0)) throw ValidationError("transform needs rho >= 0");
  if (rho > rho_max_ * (1 + 1e-12)) throw ValidationError("rho beyond the plan's resolution");
  QuadResult out;
  out.evals = static_cast<long>(r_.size());
  const double nu = (d_ - 2) / 2.0;
  double pref;
  if (rho == 0)
    pref = sphere_area(d_);
  else
    pref = (d_ == 1) ? 2.0 : std::pow(2 * std::numbers::pi, d_ / 2.0) * std::pow(rho, -nu);
  for (std::size_t p = 0; p < panels_; ++p) {
    std::complex<double> k = 0, gs = 0;
    for (std::size_t i = 21 * p; i < 21 * (p + 1); ++i) {
      std::complex<double> v;
      if (rho == 0)
        v = g0_[i];
      else if (d_ == 1)
        v = gw_[i] / std::sqrt(r_[i]) * std::cos(r_[i] * rho);
      else
        v = gw_[i] * bessel_j(nu, r_[i] * rho);
      k += wk_[i] * v;
      gs += wg_[i] * v;
    }
    out.value += k;
    out.err_estimate += std::abs(k - gs);
  }
  out = scaled(out, pref);
  out.err_estimate += tail_err_;
  return out;
}

}  // namespace brlab
