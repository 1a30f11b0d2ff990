#pragma once

#include <optional>
#include <string>

#include "brlab/error.hpp"

namespace brlab {

// Integrability exponent in [1, inf]; infinity is a distinguished state.
class LebesgueExponent {
 public:
  static LebesgueExponent infinity() { return LebesgueExponent(); }
  explicit LebesgueExponent(double p);

  bool is_infinite() const { return inf_; }
  double value() const;       // throws for infinity
  double reciprocal() const;  // 1/p, 0 for infinity
  std::string str() const;

  static LebesgueExponent parse(const std::string& s);

  friend bool operator==(const LebesgueExponent& a, const LebesgueExponent& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.p_ == b.p_);
  }

 private:
  LebesgueExponent() : p_(0), inf_(true) {}
  double p_;
  bool inf_;
};

double critical_index(int d, const LebesgueExponent& p);
inline double critical_index(int d, double p) { return critical_index(d, LebesgueExponent(p)); }

struct ScheduleEntry {
  double epsilon;
  double N;
};

inline constexpr int kDefaultPrecisionCeiling = 4;

ScheduleEntry schedule(int j, double gamma, int ceiling = kDefaultPrecisionCeiling);

double sigma(int d, const LebesgueExponent& p, double delta, double gamma);
// 2(delta_c - delta)/delta_c; throws ValidationError when delta_c = 0.
double gamma_max(int d, const LebesgueExponent& p, double delta);

enum class Regime { Near, Critical, Far };
const char* to_string(Regime r);

double critical_radius(double epsilon, double gamma);
Regime regime(double scale, double epsilon, double gamma, double ratio_threshold = 4.0);

class Params {
 public:
  Params(int d, LebesgueExponent p, double delta, double gamma, double epsilon);

  int d() const { return d_; }
  const LebesgueExponent& p() const { return p_; }
  double delta() const { return delta_; }
  double gamma() const { return gamma_; }
  double epsilon() const { return epsilon_; }
  double N() const;
  double x_c() const { return critical_radius(epsilon_, gamma_); }
  double delta_c() const { return critical_index(d_, p_); }
  double sigma() const { return brlab::sigma(d_, p_, delta_, gamma_); }

  Params with_epsilon(double eps) const { return Params(d_, p_, delta_, gamma_, eps); }

  // Requirements of the divergence experiment: p >= 2d/(d-1), delta < delta_c.
  void validate_for_divergence() const;

 private:
  int d_;
  LebesgueExponent p_;
  double delta_;
  double gamma_;
  double epsilon_;
};

}  // namespace brlab
