#pragma once

// Truncated Taylor series arithmetic: a Jet<K> holds f(t0), f'(t0), ..., f^(K)(t0)/K!
// and propagates through +, -, *, / and exp exactly up to order K.

#include <array>
#include <cmath>

namespace brlab {

template <int K>
struct Jet {
  std::array<double, K + 1> c{};

  Jet() = default;
  Jet(double v) { c[0] = v; }  // NOLINT: implicit constant
  static Jet variable(double t0) {
    Jet j(t0);
    if constexpr (K >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }
  // k-th derivative (not the Taylor coefficient)
  double derivative(int k) const {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i <= K; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i <= K; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
};

template <int K>
Jet<K> operator+(Jet<K> a, const Jet<K>& b) { return a += b; }
template <int K>
Jet<K> operator-(Jet<K> a, const Jet<K>& b) { return a -= b; }
template <int K>
Jet<K> operator-(Jet<K> a) {
  for (auto& x : a.c) x = -x;
  return a;
}
template <int K>
Jet<K> operator*(Jet<K> a, double s) { return a *= s; }
template <int K>
Jet<K> operator*(double s, Jet<K> a) { return a *= s; }
template <int K>
Jet<K> operator+(Jet<K> a, double s) {
  a.c[0] += s;
  return a;
}
template <int K>
Jet<K> operator-(Jet<K> a, double s) {
  a.c[0] -= s;
  return a;
}
template <int K>
Jet<K> operator-(double s, const Jet<K>& a) { return -a + s; }

template <int K>
Jet<K> operator*(const Jet<K>& a, const Jet<K>& b) {
  Jet<K> r;
  for (int i = 0; i <= K; ++i)
    for (int j = 0; i + j <= K; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

template <int K>
Jet<K> operator/(const Jet<K>& a, const Jet<K>& b) {
  Jet<K> q;
  for (int n = 0; n <= K; ++n) {
    double s = a.c[n];
    for (int j = 1; j <= n; ++j) s -= b.c[j] * q.c[n - j];
    q.c[n] = s / b.c[0];
  }
  return q;
}

template <int K>
Jet<K> operator/(const Jet<K>& a, double s) { return a * (1.0 / s); }
template <int K>
Jet<K> operator/(double s, const Jet<K>& b) { return Jet<K>(s) / b; }

// exp via the ODE y' = a' y on coefficients
template <int K>
Jet<K> exp(const Jet<K>& a) {
  Jet<K> r;
  r.c[0] = std::exp(a.c[0]);
  for (int n = 1; n <= K; ++n) {
    double s = 0;
    for (int k = 1; k <= n; ++k) s += k * a.c[k] * r.c[n - k];
    r.c[n] = s / n;
  }
  return r;
}

template <int K>
double value_of(const Jet<K>& a) { return a.c[0]; }
template <class T>
double value_of(const T& a) {
  return static_cast<double>(a);
}

}  // namespace brlab
