#include "brlab/profiles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace brlab {

double smoothstep(double a, double b, double x, double sharpness) {
  if (!(a < b)) throw ValidationError("smoothstep needs a < b");
  return unit_step((x - a) / (b - a), sharpness);
}

void BumpSpec::validate() const {
  if (!(a < b)) throw ValidationError("bump support must satisfy a < b");
  if (has_plateau() && !(a < c && e < b)) throw ValidationError("bump plateau must lie inside the support");
  if (!(sharpness > 0)) throw ValidationError("ramp sharpness must be positive");
}

BumpSpec psi_hat_spec(double sharpness) { return {0.25, 2.0, 0.5, 1.0, sharpness}; }
BumpSpec eta_spec(double sharpness) { return {-2.0, 2.0, -1.0, 1.0, sharpness}; }
BumpSpec ball_cutoff_spec(double sharpness) { return {-2.0, 2.0, -1.0, 1.0, sharpness}; }

DyadicPartition::DyadicPartition(int cutoff_index, double sharpness)
    : cutoff_(cutoff_index), sharpness_(sharpness) {
  if (!(sharpness > 0)) throw ValidationError("ramp sharpness must be positive");
}

double DyadicPartition::theta(double r) const { return theta_t(r); }

double DyadicPartition::chi(double r) const { return theta_t(r) - theta_t(0.5 * r); }

double DyadicPartition::eval(double r, int n) const { return chi(std::ldexp(r, -n)); }

double DyadicPartition::sum(double r) const {
  if (!(r > 0)) throw ValidationError("partition sum needs r > 0");
  int e = 0;
  std::frexp(r, &e);  // r in [2^(e-1), 2^e)
  double s = 0;
  for (int n = e - 3; n <= e + 2; ++n) s += eval(r, n);
  return s;
}

double DyadicPartition::chi_circ(double r) const { return 1.0 - theta_t(std::ldexp(r, -cutoff_)); }

const char* to_string(PsiConvention c) { return c == PsiConvention::Even ? "even" : "one-sided"; }

namespace {

// Chebyshev coefficients of f sampled at the first-kind nodes
void cheb_fit(const std::vector<double>& f, double* coef) {
  const int n = static_cast<int>(f.size());
  for (int k = 0; k < n; ++k) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += f[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
    coef[k] = (k == 0 ? 1.0 : 2.0) * s / n;
  }
}

double clenshaw(const double* coef, int n, double x) {
  double b1 = 0, b2 = 0;
  for (int k = n - 1; k >= 1; --k) {
    double b0 = 2 * x * b1 - b2 + coef[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + coef[0];
}

}  // namespace

SchwartzProfile::SchwartzProfile(PsiConvention conv, BumpSpec hat)
    : SchwartzProfile(conv, hat, Options{}) {}

SchwartzProfile::SchwartzProfile(Raw, PsiConvention conv, BumpSpec hat, Options opt)
    : conv_(conv), hat_(hat), opt_(opt) {
  hat_.validate();
  if (!(opt_.s_max > 0 && opt_.panel_width > 0 && opt_.degree >= 4))
    throw ValidationError("invalid psi table options");
  build_nodes();
}

SchwartzProfile::SchwartzProfile(PsiConvention conv, BumpSpec hat, Options opt)
    : SchwartzProfile(Raw{}, conv, hat, opt) {
  const int n = opt_.degree + 1;
  const int panels = static_cast<int>(std::ceil(opt_.s_max / opt_.panel_width));
  table_.assign(static_cast<std::size_t>(panels) * 2 * n, 0.0);
  std::vector<double> re(n), im(n);
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * opt_.panel_width, half = 0.5 * opt_.panel_width;
    for (int j = 0; j < n; ++j) {
      const double x = std::cos(std::numbers::pi * (j + 0.5) / n);
      auto v = one_sided_direct(mid + half * x);
      re[j] = v.real();
      im[j] = v.imag();
    }
    cheb_fit(re, &table_[static_cast<std::size_t>(p) * 2 * n]);
    cheb_fit(im, &table_[static_cast<std::size_t>(p) * 2 * n + n]);
  }
  // monitor the interpolation against direct sums off the nodes
  interp_err_ = 0;
  for (int p = 0; p < panels; ++p) {
    for (double frac : {0.137, 0.618}) {
      const double s = (p + frac) * opt_.panel_width;
      interp_err_ = std::max(interp_err_, std::abs((*this)(s) - direct(s)));
    }
  }
  // sampled sup beyond s_max, doubled for safety
  double m = 0;
  for (double s = opt_.s_max; s <= 1.5 * opt_.s_max; s += 0.25) m = std::max(m, std::abs(direct(s)));
  tail_bound_ = 2 * m;
}

SchwartzProfile SchwartzProfile::from_table(PsiConvention conv, BumpSpec hat, Options opt,
                                            std::vector<double> table, double tail_bound,
                                            double interp_err) {
  SchwartzProfile p(Raw{}, conv, hat, opt);
  const std::size_t expect = static_cast<std::size_t>(std::ceil(opt.s_max / opt.panel_width)) * 2 *
                             static_cast<std::size_t>(opt.degree + 1);
  if (table.size() != expect) throw Error("psi table has wrong size");
  p.table_ = std::move(table);
  p.tail_bound_ = tail_bound;
  p.interp_err_ = interp_err;
  return p;
}

void SchwartzProfile::build_nodes() {
  // trapezoid rule over the compact support: aliases sit at multiples of 2 pi / h
  const double alias = 2 * opt_.s_max + 1000.0;
  const double len = hat_.b - hat_.a;
  const int m = static_cast<int>(std::ceil(len * alias / (2 * std::numbers::pi)));
  h_ = len / m;
  t_nodes_.clear();
  w_nodes_.clear();
  for (int i = 1; i < m; ++i) {
    const double t = hat_.a + i * h_;
    const double w = eval_bump(hat_, t);
    t_nodes_.push_back(t);
    w_nodes_.push_back(w * h_ / (2 * std::numbers::pi));
  }
}

std::complex<double> SchwartzProfile::one_sided_direct(double s) const {
  // phase recurrence, resynchronised every 32 nodes
  double re = 0, im = 0;
  const std::size_t n = t_nodes_.size();
  const std::complex<double> step(std::cos(s * h_), std::sin(s * h_));
  std::complex<double> z;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 32 == 0)
      z = std::complex<double>(std::cos(s * t_nodes_[i]), std::sin(s * t_nodes_[i]));
    else
      z *= step;
    re += w_nodes_[i] * z.real();
    im += w_nodes_[i] * z.imag();
  }
  return {re, im};
}

std::complex<double> SchwartzProfile::direct(double s) const {
  auto v = one_sided_direct(s);
  if (conv_ == PsiConvention::Even) return {2 * v.real(), 0.0};
  return v;
}

std::complex<double> SchwartzProfile::operator()(double s) const {
  const double a = std::abs(s);
  if (a > opt_.s_max) return {0.0, 0.0};
  const int n = opt_.degree + 1;
  const int panels = static_cast<int>(table_.size() / (2 * n));
  int p = static_cast<int>(a / opt_.panel_width);
  if (p >= panels) p = panels - 1;
  const double half = 0.5 * opt_.panel_width;
  const double x = (a - (p + 0.5) * opt_.panel_width) / half;
  const double* c = &table_[static_cast<std::size_t>(p) * 2 * n];
  const double re = clenshaw(c, n, x);
  if (conv_ == PsiConvention::Even) return {2 * re, 0.0};
  const double im = clenshaw(c + n, n, x);
  return {re, s < 0 ? -im : im};
}

double SchwartzProfile::hat_integral() const {
  double s = 0;
  for (double w : w_nodes_) s += w;
  return s * 2 * std::numbers::pi;
}

std::string SchwartzProfile::fingerprint() const {
  std::ostringstream os;
  os.precision(17);
  os << "psi:" << to_string(conv_) << ':' << hat_.a << ',' << hat_.b << ',' << hat_.c << ','
     << hat_.e << ',' << hat_.sharpness << ':' << opt_.s_max << ',' << opt_.panel_width << ','
     << opt_.degree;
  return os.str();
}

}  // namespace brlab
