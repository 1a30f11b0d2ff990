#include "brlab/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace brlab {

LebesgueExponent::LebesgueExponent(double p) : p_(p), inf_(false) {
  if (std::isinf(p) && p > 0) {
    inf_ = true;
    p_ = 0;
    return;
  }
  if (!(p >= 1.0)) throw ValidationError("Lebesgue exponent must satisfy p >= 1");
}

double LebesgueExponent::value() const {
  if (inf_) throw ValidationError("p = inf has no finite value");
  return p_;
}

double LebesgueExponent::reciprocal() const { return inf_ ? 0.0 : 1.0 / p_; }

std::string LebesgueExponent::str() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os << p_;
  return os.str();
}

LebesgueExponent LebesgueExponent::parse(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return infinity();
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse exponent '" + s + "'");
  }
  if (pos != s.size()) throw ValidationError("cannot parse exponent '" + s + "'");
  return LebesgueExponent(v);
}

double critical_index(int d, const LebesgueExponent& p) {
  if (d < 1) throw ValidationError("dimension must be >= 1");
  double v = -0.5 + d * std::abs(0.5 - p.reciprocal());
  return v > 0 ? v : 0.0;
}

ScheduleEntry schedule(int j, double gamma, int ceiling) {
  if (j < 0) throw ValidationError("schedule index must be >= 0");
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("gamma must lie in (0,1)");
  if (j > ceiling) throw PrecisionCeilingError(j, ceiling);
  // 2^j stays far below the double exponent range for any sane ceiling
  if (j > 9) throw PrecisionCeilingError(j, 9);
  const double e = std::ldexp(1.0, j);
  return {std::ldexp(1.0, -(1 << j)), std::exp2(gamma * e)};
}

double sigma(int d, const LebesgueExponent& p, double delta, double gamma) {
  const double dc = critical_index(d, p);
  return delta - dc + gamma * dc / 2.0;
}

double gamma_max(int d, const LebesgueExponent& p, double delta) {
  const double dc = critical_index(d, p);
  if (dc == 0.0) throw ValidationError("gamma_max undefined: critical index is zero");
  return 2.0 * (dc - delta) / dc;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Near: return "near";
    case Regime::Critical: return "critical";
    case Regime::Far: return "far";
  }
  return "?";
}

double critical_radius(double epsilon, double gamma) { return std::pow(epsilon, gamma / 2.0 - 1.0); }

Regime regime(double scale, double epsilon, double gamma, double ratio_threshold) {
  if (!(scale > 0)) throw ValidationError("regime scale must be positive");
  if (!(ratio_threshold > 1)) throw ValidationError("ratio threshold must exceed 1");
  const double xc = critical_radius(epsilon, gamma);
  if (scale < xc / ratio_threshold) return Regime::Near;
  if (scale > xc * ratio_threshold) return Regime::Far;
  return Regime::Critical;
}

Params::Params(int d, LebesgueExponent p, double delta, double gamma, double epsilon)
    : d_(d), p_(p), delta_(delta), gamma_(gamma), epsilon_(epsilon) {
  if (d < 1) throw ValidationError("dimension must be >= 1");
  if (p.reciprocal() > 0.5) throw ValidationError("p must lie in [2, inf]");
  if (!(delta >= 0)) throw ValidationError("delta must be >= 0");
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("gamma must lie in (0,1)");
  if (!(epsilon > 0 && epsilon <= 0.5)) throw ValidationError("epsilon must lie in (0, 1/2]");
}

double Params::N() const { return std::pow(epsilon_, -gamma_); }

void Params::validate_for_divergence() const {
  if (d_ < 2) throw ValidationError("divergence experiment needs d >= 2");
  const double pmin = 2.0 * d_ / (d_ - 1.0);
  if (!p_.is_infinite() && p_.value() < pmin)
    throw ValidationError("divergence experiment needs p >= 2d/(d-1)");
  if (!(delta_ < delta_c()))
    throw ValidationError("divergence experiment needs delta < critical index");
}

}  // namespace brlab
