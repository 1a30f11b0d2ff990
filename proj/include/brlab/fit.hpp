#pragma once

#include <string>
#include <vector>

namespace brlab {

// Least-squares fit of log y = intercept + slope * log x.
struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  // 95% confidence half-width of the slope (Student t); infinite for n = 2
  double half_width = 0;
  int n = 0;
  bool degenerate = false;
  std::string note;
  std::vector<double> log_x, log_y;

  bool within(double predicted, double tol) const { return !degenerate && std::abs(slope - predicted) <= tol; }
};

ExponentFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace brlab
