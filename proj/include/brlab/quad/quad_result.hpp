#pragma once

#include <complex>

#include "brlab/error.hpp"

namespace brlab {

template <class V>
struct BasicQuadResult {
  V value{};
  double err_estimate = 0;
  long evals = 0;
  bool converged = true;
};

using QuadResult = BasicQuadResult<std::complex<double>>;

// Non-convergence; carries the best available estimate.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, QuadResult best) : Error(what), best_(best) {}
  const QuadResult& best() const { return best_; }

 private:
  QuadResult best_;
};

template <class V>
QuadResult to_complex(const BasicQuadResult<V>& r) {
  return {std::complex<double>(r.value), r.err_estimate, r.evals, r.converged};
}

inline QuadResult& operator+=(QuadResult& a, const QuadResult& b) {
  a.value += b.value;
  a.err_estimate += b.err_estimate;
  a.evals += b.evals;
  a.converged = a.converged && b.converged;
  return a;
}

inline QuadResult scaled(QuadResult r, std::complex<double> s) {
  r.value *= s;
  r.err_estimate *= std::abs(s);
  return r;
}

}  // namespace brlab
