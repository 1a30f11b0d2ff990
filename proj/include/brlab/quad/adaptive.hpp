#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "brlab/quad/gauss_kronrod.hpp"
#include "brlab/quad/quad_result.hpp"

namespace brlab {

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 100000;
  bool throw_on_failure = true;
  // accept errors at the rounding level of int |f|
  bool roundoff_floor = true;
};

namespace detail {

template <class V>
struct Segment {
  double a, b;
  V value;
  double err;
  double resabs;
  bool operator<(const Segment& o) const { return err < o.err; }
};

// Gauss-Kronrod 21 with the QUADPACK error heuristic
template <class V, class F>
Segment<V> gk21(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  V fv[21];
  fv[10] = f(c);
  for (int i = 0; i < 10; ++i) {
    fv[i] = f(c - h * gk21::xgk[i]);
    fv[20 - i] = f(c + h * gk21::xgk[i]);
  }
  V rk = fv[10] * gk21::wgk[10];
  V rg{};
  double resabs = std::abs(fv[10]) * gk21::wgk[10];
  for (int i = 0; i < 10; ++i) {
    rk += (fv[i] + fv[20 - i]) * gk21::wgk[i];
    resabs += (std::abs(fv[i]) + std::abs(fv[20 - i])) * gk21::wgk[i];
    if (i % 2 == 1) rg += (fv[i] + fv[20 - i]) * gk21::wg[i / 2];
  }
  const V mean = rk * 0.5;
  double resasc = gk21::wgk[10] * std::abs(fv[10] - mean);
  for (int i = 0; i < 10; ++i)
    resasc += gk21::wgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[20 - i] - mean));
  const double ah = std::abs(h);
  double err = std::abs((rk - rg) * h);
  resabs *= ah;
  resasc *= ah;
  if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
  return {a, b, rk * h, err, resabs};
}

}  // namespace detail

// Globally adaptive GK21 on [a,b]; `breaks` seeds the initial partition.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {},
                        const std::vector<double>& breaks = {})
    -> BasicQuadResult<std::decay_t<decltype(f(a))>> {
  using V = std::decay_t<decltype(f(a))>;
  using Seg = detail::Segment<V>;
  BasicQuadResult<V> out;
  if (!(a < b)) {
    if (a == b) return out;
    throw ValidationError("integrate_adaptive needs a < b");
  }
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::priority_queue<Seg> heap;
  std::vector<Seg> frozen;
  V total{};
  double err_total = 0, abs_total = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Seg s = detail::gk21<V>(f, pts[i], pts[i + 1]);
    out.evals += 21;
    total += s.value;
    err_total += s.err;
    abs_total += s.resabs;
    heap.push(s);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  auto tolerance = [&](const V& v, double absum) {
    double t = std::max(opt.rel_tol * std::abs(v), opt.abs_tol);
    if (opt.roundoff_floor) t = std::max(t, 200 * eps * absum);
    return t;
  };
  int intervals = static_cast<int>(heap.size());
  int since_resum = 0;
  while (!heap.empty()) {
    if (err_total <= tolerance(total, abs_total)) break;
    if (intervals >= opt.max_intervals) {
      out.converged = false;
      break;
    }
    Seg s = heap.top();
    heap.pop();
    const double m = 0.5 * (s.a + s.b);
    if (!(m > s.a && m < s.b) || (s.b - s.a) < 8 * eps * std::max(std::abs(s.a), std::abs(s.b))) {
      frozen.push_back(s);  // cannot be resolved further in double
      if (heap.empty()) break;
      continue;
    }
    Seg l = detail::gk21<V>(f, s.a, m), r = detail::gk21<V>(f, m, s.b);
    out.evals += 42;
    ++intervals;
    total += l.value + r.value - s.value;
    err_total += l.err + r.err - s.err;
    abs_total += l.resabs + r.resabs - s.resabs;
    heap.push(l);
    heap.push(r);
    if (++since_resum == 256) {
      since_resum = 0;
      V t{};
      double e = 0, ab = 0;
      auto h = heap;
      while (!h.empty()) {
        t += h.top().value;
        e += h.top().err;
        ab += h.top().resabs;
        h.pop();
      }
      for (auto& fz : frozen) {
        t += fz.value;
        e += fz.err;
        ab += fz.resabs;
      }
      total = t;
      err_total = e;
      abs_total = ab;
    }
  }
  // final deterministic re-summation in interval order
  std::vector<Seg> all = frozen;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
  out.value = V{};
  out.err_estimate = 0;
  double absum = 0;
  for (auto& s : all) {
    out.value += s.value;
    out.err_estimate += s.err;
    absum += s.resabs;
  }
  if (out.err_estimate > tolerance(out.value, absum)) out.converged = false;
  if (!out.converged && opt.throw_on_failure)
    throw QuadratureError("adaptive quadrature did not reach tolerance", to_complex(out));
  return out;
}

// Adaptive Gauss-Legendre (n vs 2n+1 points) in an arbitrary real type.
template <class Real, class F>
BasicQuadResult<Real> integrate_adaptive_gl(F&& f, Real a, Real b, Real rel_tol, Real abs_tol,
                                            int max_intervals = 20000, int n = 20) {
  using std::abs;
  static thread_local int cached_n = -1;
  static thread_local std::vector<Real> x1, w1, x2, w2;
  if (cached_n != n) {
    std::tie(x1, w1) = gauss_legendre<Real>(n);
    std::tie(x2, w2) = gauss_legendre<Real>(2 * n + 1);
    cached_n = n;
  }
  struct S {
    Real a, b, v, e;
    bool operator<(const S& o) const { return e < o.e; }
  };
  BasicQuadResult<Real> out;
  auto rule = [&](Real lo, Real hi) {
    const Real c = (lo + hi) / 2, h = (hi - lo) / 2;
    Real g1 = 0, g2 = 0;
    for (int i = 0; i < n; ++i) g1 += w1[i] * f(c + h * x1[i]);
    for (int i = 0; i < 2 * n + 1; ++i) g2 += w2[i] * f(c + h * x2[i]);
    out.evals += 3 * n + 1;
    return S{lo, hi, g2 * h, abs((g2 - g1) * h)};
  };
  std::priority_queue<S> heap;
  heap.push(rule(a, b));
  Real total = heap.top().v, err = heap.top().e;
  int count = 1;
  while (err > std::max(rel_tol * abs(total), abs_tol) && count < max_intervals) {
    S s = heap.top();
    heap.pop();
    const Real m = (s.a + s.b) / 2;
    S l = rule(s.a, m), r = rule(m, s.b);
    total += l.v + r.v - s.v;
    err += l.e + r.e - s.e;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  Real v = 0, e = 0;
  while (!heap.empty()) {
    v += heap.top().v;
    e += heap.top().e;
    heap.pop();
  }
  out.value = v;
  out.err_estimate = static_cast<double>(e);
  out.converged = e <= std::max(rel_tol * abs(v), abs_tol);
  return out;
}

}  // namespace brlab
