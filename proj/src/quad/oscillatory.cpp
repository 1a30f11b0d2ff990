#include "brlab/quad/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "brlab/quad/adaptive.hpp"
#include "brlab/quad/gauss_kronrod.hpp"

namespace brlab {

std::vector<double> spherical_bessel_sequence(int n, double w) {
  std::vector<double> j(n, 0.0);
  if (n == 0) return j;
  const bool neg = w < 0;
  const double x = std::abs(w);
  if (x < 0.5) {
    // power series for each order
    double lead = 1;  // x^k / (2k+1)!!
    for (int k = 0; k < n; ++k) {
      if (k > 0) lead *= x / (2 * k + 1);
      double s = 1, term = 1;
      for (int m = 1; m < 30; ++m) {
        term *= -0.5 * x * x / (m * (2 * k + 2 * m + 1.0));
        s += term;
        if (std::abs(term) < 1e-18) break;
      }
      j[k] = lead * s;
    }
  } else if (x >= n) {
    j[0] = std::sin(x) / x;
    if (n > 1) j[1] = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int k = 1; k + 1 < n; ++k) j[k + 1] = (2 * k + 1) / x * j[k] - j[k - 1];
  } else {
    const int K = n + 20 + static_cast<int>(x);
    double y_next = 0, y = 1e-280;
    std::vector<double> buf(K + 1, 0.0);
    buf[K] = y;
    for (int k = K; k >= 1; --k) {
      double y_prev = (2 * k + 1) / x * y - y_next;
      y_next = y;
      y = y_prev;
      buf[k - 1] = y;
      if (std::abs(y) > 1e250) {
        for (int i = k - 1; i <= K; ++i) buf[i] *= 1e-250;
        y *= 1e-250;
        y_next *= 1e-250;
      }
    }
    const double j0 = std::sin(x) / x, j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const double scale = std::abs(j0) > std::abs(j1) ? j0 / buf[0] : j1 / buf[1];
    for (int k = 0; k < n; ++k) j[k] = buf[k] * scale;
  }
  if (neg)
    for (int k = 1; k < n; k += 2) j[k] = -j[k];
  return j;
}

std::vector<double> stationary_points(const RealFn& dphi, double a, double b, int scan_points) {
  std::vector<double> out;
  const double h = (b - a) / scan_points;
  double x0 = a, f0 = dphi(a);
  for (int i = 1; i <= scan_points; ++i) {
    const double x1 = (i == scan_points) ? b : a + i * h;
    const double f1 = dphi(x1);
    if (f0 == 0 && x0 > a) out.push_back(x0);
    if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 100 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * std::abs(hi); ++it) {
        const double m = 0.5 * (lo + hi);
        const double fm = dphi(m);
        if ((fm < 0) == (flo < 0)) {
          lo = m;
          flo = fm;
        } else {
          hi = m;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

namespace {

struct Panel {
  double a, b;
  std::complex<double> value;
  double err;
  double absum;
  bool operator<(const Panel& o) const { return err < o.err; }
};

class FilonLegendre {
 public:
  FilonLegendre(const ComplexFn& amp, const RealFn& phi, const RealFn& dphi, int n)
      : amp_(amp), phi_(phi), dphi_(dphi), n_(n) {
    std::tie(x_, w_) = gauss_legendre<double>(n);
    // Legendre polynomial table at the nodes
    P_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
      double p0 = 1, p1 = x_[j];
      P_[j] = 1;
      if (n > 1) P_[n + j] = p1;
      for (int k = 2; k < n; ++k) {
        double p2 = ((2 * k - 1) * x_[j] * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
        P_[static_cast<std::size_t>(k) * n + j] = p2;
      }
    }
  }

  Panel panel(double a, double b, long& evals) const {
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    const double pm = phi_(m), dm = dphi_(m);
    const double omega = dm * h;
    std::vector<std::complex<double>> v(n_);
    double vmax = 0;
    for (int j = 0; j < n_; ++j) {
      const double t = m + h * x_[j];
      const double res = phi_(t) - pm - dm * h * x_[j];
      v[j] = amp_(t) * std::complex<double>(std::cos(res), std::sin(res)) * w_[j];
      vmax = std::max(vmax, std::abs(v[j]) / w_[j]);
    }
    evals += n_;
    const auto jk = spherical_bessel_sequence(n_, omega);
    std::complex<double> sum = 0;
    const std::complex<double> I(0, 1);
    std::complex<double> ik = 1;
    double tail = 0;
    for (int k = 0; k < n_; ++k) {
      std::complex<double> c = 0;
      for (int j = 0; j < n_; ++j) c += v[j] * P_[static_cast<std::size_t>(k) * n_ + j];
      c *= (2 * k + 1) / 2.0;
      sum += c * 2.0 * ik * jk[k];
      if (k >= n_ - 2) tail += std::abs(c);
      ik *= I;
    }
    // coefficients at the rounding level of the node sums carry no information
    // the residual phase loses |phi| * eps absolute accuracy
    const double eps = std::numeric_limits<double>::epsilon();
    const double phase_scale = 1.0 + std::abs(pm) / 32;
    const double noise = (2.0 * n_ * n_ + 4 * std::abs(pm)) * eps * vmax;
    if (tail < noise) tail = 0;
    const std::complex<double> e(std::cos(pm), std::sin(pm));
    const double damp = std::min(1.0, 2.0 / std::max(std::abs(omega), 1e-300));
    double err = 2 * h * tail * damp;
    err = std::max(err, 2 * h * vmax * 64 * eps * phase_scale);
    return {a, b, h * e * sum, err, 2 * h * vmax * phase_scale};
  }

 private:
  const ComplexFn& amp_;
  const RealFn& phi_;
  const RealFn& dphi_;
  int n_;
  std::vector<double> x_, w_, P_;
};

}  // namespace

QuadResult integrate_oscillatory(const ComplexFn& amp, const RealFn& phi, const RealFn& dphi,
                                 double a, double b, const OscillatoryOptions& opt) {
  if (!(a < b)) {
    if (a == b) return {};
    throw ValidationError("integrate_oscillatory needs a < b");
  }
  auto stat = stationary_points(dphi, a, b, opt.scan_points);
  // phase excursion from the scan: sum of |phi| differences between extrema
  std::vector<double> pts{a};
  pts.insert(pts.end(), stat.begin(), stat.end());
  pts.push_back(b);
  double excursion = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) excursion += std::abs(phi(pts[i + 1]) - phi(pts[i]));

  if (excursion < opt.slow_phase) {
    AdaptiveOptions ao;
    ao.rel_tol = opt.rel_tol;
    ao.abs_tol = opt.abs_tol;
    ao.throw_on_failure = opt.throw_on_failure;
    auto f = [&](double t) {
      const double p = phi(t);
      return amp(t) * std::complex<double>(std::cos(p), std::sin(p));
    };
    return integrate_adaptive(f, a, b, ao, stat);
  }

  FilonLegendre rule(amp, phi, dphi, opt.legendre_order);
  QuadResult out;
  std::priority_queue<Panel> heap;
  std::vector<Panel> frozen;
  std::complex<double> total = 0;
  double err_total = 0, abs_total = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    Panel p = rule.panel(pts[i], pts[i + 1], out.evals);
    total += p.value;
    err_total += p.err;
    abs_total += p.absum;
    heap.push(p);
  }
  int panels = static_cast<int>(heap.size());
  const double eps = std::numeric_limits<double>::epsilon();
  auto tolerance = [&](std::complex<double> v, double ab) {
    return std::max({opt.rel_tol * std::abs(v), opt.abs_tol, 200 * eps * ab});
  };
  int since = 0;
  while (!heap.empty()) {
    if (err_total <= tolerance(total, abs_total)) break;
    if (panels >= opt.max_panels) {
      out.converged = false;
      break;
    }
    Panel p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    if ((p.b - p.a) < 16 * eps * std::max(std::abs(p.a), std::abs(p.b))) {
      frozen.push_back(p);
      if (heap.empty()) break;
      continue;
    }
    Panel l = rule.panel(p.a, m, out.evals), r = rule.panel(m, p.b, out.evals);
    ++panels;
    total += l.value + r.value - p.value;
    err_total += l.err + r.err - p.err;
    abs_total += l.absum + r.absum - p.absum;
    heap.push(l);
    heap.push(r);
    if (++since == 256) {
      since = 0;
      auto h = heap;
      total = 0;
      err_total = 0;
      abs_total = 0;
      while (!h.empty()) {
        total += h.top().value;
        err_total += h.top().err;
        abs_total += h.top().absum;
        h.pop();
      }
      for (auto& f : frozen) {
        total += f.value;
        err_total += f.err;
        abs_total += f.absum;
      }
    }
  }
  std::vector<Panel> all = frozen;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double absum = 0;
  for (auto& p : all) {
    out.value += p.value;
    out.err_estimate += p.err;
    absum += p.absum;
  }
  if (out.err_estimate > tolerance(out.value, absum)) out.converged = false;
  if (!out.converged && opt.throw_on_failure) {
    std::ostringstream os;
    os << "oscillatory quadrature unresolved on [" << a << ", " << b << "] after " << panels
       << " panels; stationary points:";
    for (double s : stat) os << ' ' << s;
    throw QuadratureError(os.str(), out);
  }
  return out;
}

}  // namespace brlab
