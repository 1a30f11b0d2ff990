#include "brlab/quad/bessel.hpp"

#include <numbers>

namespace brlab {

double bessel_asymptotic_leading(double m, double r) {
  if (!(r > 0)) throw ValidationError("leading asymptotic needs r > 0");
  const double pi = std::numbers::pi;
  return std::sqrt(2.0 / (pi * r)) * std::cos(r - pi * m / 2 - pi / 4);
}

}  // namespace brlab
