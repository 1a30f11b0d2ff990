#include "brlab/quad/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "brlab/error.hpp"

namespace brlab {

namespace {

using cd = std::complex<double>;

cd clenshaw(const cd* c, int n, double u) {
  cd b1 = 0, b2 = 0;
  for (int k = n - 1; k >= 1; --k) {
    const cd b0 = 2 * u * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + c[0];
}

}  // namespace

ChebyshevTable::ChebyshevTable(const std::function<cd(double)>& f, std::vector<double> edges, Options opt)
    : opt_(opt) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()))
    throw ValidationError("ChebyshevTable needs increasing edges");
  if (opt_.degree < 2) throw ValidationError("ChebyshevTable degree must be at least 2");
  edges_.push_back(edges.front());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i + 1] > edges[i]) build(f, edges[i], edges[i + 1], 0);
}

void ChebyshevTable::build(const std::function<cd(double)>& f, double a, double b, int depth) {
  const int n = opt_.degree + 1;
  std::vector<cd> v(n), c(n);
  for (int j = 0; j < n; ++j) {
    const double u = std::cos(std::numbers::pi * (j + 0.5) / n);
    v[j] = f(0.5 * (a + b) + 0.5 * (b - a) * u);
  }
  for (int k = 0; k < n; ++k) {
    cd s = 0;
    for (int j = 0; j < n; ++j) s += v[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
    c[k] = (k == 0 ? 1.0 : 2.0) * s / static_cast<double>(n);
  }
  evals_ += n;
  // test points halfway between the outer nodes and at the centre
  double err = 0;
  for (double u : {0.97, -0.53, 0.11}) {
    const cd exact = f(0.5 * (a + b) + 0.5 * (b - a) * u);
    err = std::max(err, std::abs(clenshaw(c.data(), n, u) - exact));
    ++evals_;
  }
  if (err > opt_.abs_tol && depth < opt_.max_depth) {
    const double m = 0.5 * (a + b);
    build(f, a, m, depth + 1);
    build(f, m, b, depth + 1);
    return;
  }
  max_err_ = std::max(max_err_, err);
  edges_.push_back(b);
  coef_.insert(coef_.end(), c.begin(), c.end());
}

ChebyshevTable ChebyshevTable::from_data(Data d) {
  const std::size_t n = static_cast<std::size_t>(d.opt.degree) + 1;
  if (d.edges.size() < 2 || !std::is_sorted(d.edges.begin(), d.edges.end()) ||
      d.coef.size() != (d.edges.size() - 1) * n)
    throw ValidationError("ChebyshevTable data is inconsistent");
  ChebyshevTable t;
  t.opt_ = d.opt;
  t.edges_ = std::move(d.edges);
  t.coef_ = std::move(d.coef);
  t.max_err_ = d.max_err;
  return t;
}

cd ChebyshevTable::operator()(double x) const {
  if (!contains(x)) throw ValidationError("ChebyshevTable evaluated outside its range");
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  std::size_t p = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - edges_.begin() - 1));
  p = std::min(p, panels() - 1);
  const double a = edges_[p], b = edges_[p + 1];
  const double u = std::clamp((2 * x - a - b) / (b - a), -1.0, 1.0);
  const int n = opt_.degree + 1;
  return clenshaw(coef_.data() + p * n, n, u);
}

}  // namespace brlab
