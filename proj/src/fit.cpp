#include "brlab/fit.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

namespace brlab {

ExponentFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  ExponentFit f;
  if (x.size() != y.size()) {
    f.degenerate = true;
    f.note = "size mismatch";
    return f;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0 && std::isfinite(x[i]) && std::isfinite(y[i]))) {
      f.degenerate = true;
      f.note = "non-positive or non-finite sample";
      return f;
    }
    f.log_x.push_back(std::log(x[i]));
    f.log_y.push_back(std::log(y[i]));
  }
  f.n = static_cast<int>(x.size());
  if (f.n < 2) {
    f.degenerate = true;
    f.note = "fewer than two samples";
    return f;
  }
  double mx = 0, my = 0;
  for (int i = 0; i < f.n; ++i) {
    mx += f.log_x[i];
    my += f.log_y[i];
  }
  mx /= f.n;
  my /= f.n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < f.n; ++i) {
    sxx += (f.log_x[i] - mx) * (f.log_x[i] - mx);
    sxy += (f.log_x[i] - mx) * (f.log_y[i] - my);
  }
  if (!(sxx > 0)) {
    f.degenerate = true;
    f.note = "abscissae coincide";
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (int i = 0; i < f.n; ++i) {
    const double r = f.log_y[i] - f.intercept - f.slope * f.log_x[i];
    ss += r * r;
  }
  f.residual_rms = std::sqrt(ss / f.n);
  if (f.n > 2) {
    const double se = std::sqrt(ss / (f.n - 2) / sxx);
    boost::math::students_t dist(f.n - 2);
    f.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  } else {
    f.half_width = std::numeric_limits<double>::infinity();
  }
  return f;
}

}  // namespace brlab
