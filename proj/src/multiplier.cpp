#include "brlab/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace brlab {

void RadialMultiplier::validate() const {
  if (!m) throw ValidationError("multiplier function missing");
  if (!(s_lo >= 0 && s_hi > s_lo)) throw ValidationError("multiplier window must satisfy 0 <= s_lo < s_hi");
  if (!(std::isfinite(tail_tol) && tail_tol >= 0)) throw ValidationError("multiplier window is not certified");
}

RadialMultiplier bochner_riesz_multiplier(double delta, double t) {
  if (!(delta >= 0)) throw ValidationError("Bochner-Riesz order must be >= 0");
  if (!(t > 0)) throw ValidationError("Bochner-Riesz scale must be positive");
  RadialMultiplier m;
  const double t2 = t * t;
  m.m = [delta, t2](double s) -> std::complex<double> {
    const double u = 1 - s / t2;
    if (u <= 0) return 0.0;
    return delta == 0 ? 1.0 : std::pow(u, delta);
  };
  m.s_lo = 0;
  m.s_hi = t2;
  m.tail_tol = 0;
  m.breakpoints = {t2};
  m.rho_bandwidth = 0;
  return m;
}

RadialMultiplier heat_multiplier(double tau, double tail_tol) {
  if (!(tau > 0)) throw ValidationError("heat time must be positive");
  RadialMultiplier m;
  m.m = [tau](double s) -> std::complex<double> { return std::exp(-tau * s); };
  m.s_lo = 0;
  m.s_hi = -std::log(tail_tol) / tau;
  m.tail_tol = tail_tol;
  m.smoothness = RadialMultiplier::Smoothness::SchwartzWindowed;
  m.rho_bandwidth = std::sqrt(m.s_hi) * tau * 2;
  return m;
}

namespace {

double inverse_prefactor(int d, double x) {
  const double norm = std::pow(2 * std::numbers::pi, -d);
  if (x == 0) return norm * sphere_area(d);
  if (d == 1) return norm * 2.0;
  return norm * std::pow(2 * std::numbers::pi, d / 2.0) * std::pow(x, -(d - 2) / 2.0);
}

}  // namespace

SpectralEngine::SpectralEngine(const RadialMultiplier& m, const RadialProfile& f, int d, double x_max,
                               const MultiplierOptions& opt)
    : d_(d), x_max_(x_max) {
  m.validate();
  if (!(x_max >= 0)) throw ValidationError("x_max must be >= 0");
  if (f.dim() != d) throw ValidationError("profile dimension mismatch");
  double lo = std::sqrt(m.s_lo), hi = std::sqrt(m.s_hi);
  const auto& spec = f.spectrum();
  known_ = opt.use_known_spectrum && spec.has_value();
  double f_rate;
  std::vector<double> breaks;
  for (double b : m.breakpoints) breaks.push_back(std::sqrt(b));
  if (known_) {
    lo = std::max(lo, spec->rho_lo);
    hi = std::min(hi, spec->rho_hi);
    f_rate = spec->bandwidth;
    breaks.insert(breaks.end(), spec->breakpoints.begin(), spec->breakpoints.end());
  } else {
    if (!f.tail_certified()) throw ValidationError("radial profile tail is not certified");
    f_rate = f.window().r_hi;
  }
  if (!(hi > lo)) return;  // multiplier and spectrum do not overlap

  const double rate = x_max + f_rate + m.rho_bandwidth + 1e-300;
  const double n = std::max(1.0, std::ceil((hi - lo) * rate / opt.phase_per_panel));
  std::vector<double> edges;
  for (int i = 0; i <= static_cast<int>(n); ++i) edges.push_back(lo + (hi - lo) * i / n);
  // geometric grading toward non-smooth points
  std::vector<double> extra;
  for (double b : breaks) {
    if (b < lo || b > hi) continue;
    extra.push_back(b);
    const double h = (hi - lo) / n;
    for (int l = 1; l <= opt.grading_levels; ++l) {
      const double off = h * std::ldexp(1.0, -l);
      if (b - off > lo) extra.push_back(b - off);
      if (b + off < hi) extra.push_back(b + off);
    }
  }
  edges.insert(edges.end(), extra.begin(), extra.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    panel_start_.push_back(rho_.size());
    const double c = 0.5 * (edges[p] + edges[p + 1]), h = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < 21; ++i) {
      const int k = i < 10 ? i : (i == 10 ? 10 : 20 - i);
      const double x = i < 10 ? -gk21::xgk[k] : (i == 10 ? 0.0 : gk21::xgk[k]);
      rho_.push_back(c + h * x);
      wk_.push_back(gk21::wgk[k] * h);
      wg_.push_back((k % 2 == 1) ? gk21::wg[k / 2] * h : 0.0);
    }
  }
  panel_start_.push_back(rho_.size());

  mf_.resize(rho_.size());
  std::unique_ptr<HankelPlan> plan;
  if (!known_) plan = std::make_unique<HankelPlan>(f, d, hi, opt.plan_phase_per_panel);
  double err_int = 0;
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    const auto mv = m.m(rho_[i] * rho_[i]);
    if (known_) {
      mf_[i] = mv * spec->F(rho_[i]);
    } else {
      const auto r = plan->transform(rho_[i]);
      mf_[i] = mv * r.value;
      err_int += wk_[i] * std::abs(mv) * r.err_estimate * std::pow(rho_[i], d - 1);
    }
  }
  spec_err_ = err_int * std::pow(2 * std::numbers::pi, -d) * sphere_area(d);
}

QuadResult SpectralEngine::at(double x) const {
  if (!(x >= 0)) throw ValidationError("x_mag must be >= 0");
  if (x > x_max_ * (1 + 1e-12)) throw ValidationError("x_mag beyond the engine's resolution");
  QuadResult out;
  out.evals = static_cast<long>(rho_.size());
  if (rho_.empty()) return out;
  const double nu = (d_ - 2) / 2.0;
  for (std::size_t p = 0; p + 1 < panel_start_.size(); ++p) {
    std::complex<double> k = 0, g = 0;
    for (std::size_t i = panel_start_[p]; i < panel_start_[p + 1]; ++i) {
      const double r = rho_[i];
      double ker;
      if (x == 0)
        ker = std::pow(r, d_ - 1);
      else if (d_ == 1)
        ker = std::cos(r * x);
      else
        ker = bessel_j(nu, r * x) * std::pow(r, d_ / 2.0);
      const auto v = mf_[i] * ker;
      k += wk_[i] * v;
      g += wg_[i] * v;
    }
    out.value += k;
    out.err_estimate += std::abs(k - g);
  }
  out = scaled(out, inverse_prefactor(d_, x));
  out.err_estimate += spec_err_;
  return out;
}

QuadResult apply_multiplier(const RadialMultiplier& m, const RadialProfile& f, int d, double x_mag,
                            const MultiplierOptions& opt) {
  return SpectralEngine(m, f, d, x_mag, opt).at(x_mag);
}

QuadResult br_kernel(int d, double delta, double t, double x_mag) {
  if (!(t > 0)) throw ValidationError("br_kernel needs t > 0");
  if (!(delta >= 0)) throw ValidationError("br_kernel needs delta >= 0");
  RadialProfile g(
      d, [delta](double r) -> std::complex<double> { return delta == 0 ? 1.0 : std::pow(std::max(0.0, 1 - r * r), delta); },
      {0.0, 1.0, 0.0});
  RadialOptions o;
  o.rel_tol = 1e-12;
  auto r = radial_fourier(g, d, t * x_mag, o);
  return scaled(r, std::pow(t, d));
}

QuadResult br_mean(const RadialProfile& f, int d, double delta, double t, double x_mag,
                   const MultiplierOptions& opt) {
  return apply_multiplier(bochner_riesz_multiplier(delta, t), f, d, x_mag, opt);
}

}  // namespace brlab
