#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace brlab {

// Piecewise Chebyshev interpolant of a complex function, refined by bisection until
// the interpolant matches f at off-node test points within abs_tol.
class ChebyshevTable {
 public:
  struct Options {
    int degree = 16;
    double abs_tol = 1e-12;
    int max_depth = 12;
  };

  ChebyshevTable() = default;
  // `edges` gives the initial panels
  ChebyshevTable(const std::function<std::complex<double>(double)>& f, std::vector<double> edges, Options opt);

  std::complex<double> operator()(double x) const;
  bool contains(double x) const { return !edges_.empty() && x >= edges_.front() && x <= edges_.back(); }
  double lo() const { return edges_.front(); }
  double hi() const { return edges_.back(); }
  // largest observed test-point mismatch
  double max_error() const { return max_err_; }
  std::size_t panels() const { return edges_.empty() ? 0 : edges_.size() - 1; }
  long evals() const { return evals_; }

  // raw state for serialization
  struct Data {
    Options opt;
    std::vector<double> edges;
    std::vector<std::complex<double>> coef;
    double max_err = 0;
  };
  Data data() const { return {opt_, edges_, coef_, max_err_}; }
  static ChebyshevTable from_data(Data d);

 private:
  void build(const std::function<std::complex<double>(double)>& f, double a, double b, int depth);

  Options opt_;
  std::vector<double> edges_;
  std::vector<std::complex<double>> coef_;  // (degree + 1) per panel
  double max_err_ = 0;
  long evals_ = 0;
};

}  // namespace brlab
