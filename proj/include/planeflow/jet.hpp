#pragma once

// Third-order forward-mode automatic differentiation in two variables.
// Every analytic field in this project is written once as a formula over
// Jet3 scalars; velocity gradients, pressure gradients, and the velocity
// Hessians needed by the momentum operators then come out of the same
// evaluation with no finite differences anywhere.

#include <array>
#include <cmath>
#include <stdexcept>

namespace planeflow {

class Jet3 {
 public:
  double v = 0.0;
  // First derivatives d[i] = ∂_i.
  std::array<double, 2> d{0.0, 0.0};
  // Symmetric second derivatives: (00), (01), (11).
  std::array<double, 3> dd{0.0, 0.0, 0.0};
  // Symmetric third derivatives: (000), (001), (011), (111).
  std::array<double, 4> ddd{0.0, 0.0, 0.0, 0.0};

  Jet3() = default;
  Jet3(double value) : v(value) {}  // NOLINT: implicit constant lift

  static Jet3 variable(double value, int index) {
    Jet3 j(value);
    j.d[index] = 1.0;
    return j;
  }

  static int i2(int i, int j) { return i + j; }
  static int i3(int i, int j, int k) { return i + j + k; }

  double deriv(int i) const { return d[i]; }
  double deriv(int i, int j) const { return dd[i2(i, j)]; }
  double deriv(int i, int j, int k) const { return ddd[i3(i, j, k)]; }

  Jet3 operator-() const {
    Jet3 r;
    r.v = -v;
    for (int i = 0; i < 2; ++i) r.d[i] = -d[i];
    for (int i = 0; i < 3; ++i) r.dd[i] = -dd[i];
    for (int i = 0; i < 4; ++i) r.ddd[i] = -ddd[i];
    return r;
  }

  Jet3 operator+(const Jet3& o) const {
    Jet3 r;
    r.v = v + o.v;
    for (int i = 0; i < 2; ++i) r.d[i] = d[i] + o.d[i];
    for (int i = 0; i < 3; ++i) r.dd[i] = dd[i] + o.dd[i];
    for (int i = 0; i < 4; ++i) r.ddd[i] = ddd[i] + o.ddd[i];
    return r;
  }
  Jet3 operator-(const Jet3& o) const { return *this + (-o); }

  Jet3 operator*(const Jet3& o) const {
    Jet3 r;
    r.v = v * o.v;
    for (int i = 0; i < 2; ++i) r.d[i] = d[i] * o.v + v * o.d[i];
    static constexpr int P2[3][2] = {{0, 0}, {0, 1}, {1, 1}};
    for (int m = 0; m < 3; ++m) {
      const int i = P2[m][0], j = P2[m][1];
      r.dd[m] = dd[m] * o.v + d[i] * o.d[j] + d[j] * o.d[i] + v * o.dd[m];
    }
    static constexpr int P3[4][3] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    for (int m = 0; m < 4; ++m) {
      const int i = P3[m][0], j = P3[m][1], k = P3[m][2];
      r.ddd[m] = ddd[m] * o.v + v * o.ddd[m] +
                 dd[i2(i, j)] * o.d[k] + dd[i2(i, k)] * o.d[j] +
                 dd[i2(j, k)] * o.d[i] +
                 d[i] * o.dd[i2(j, k)] + d[j] * o.dd[i2(i, k)] +
                 d[k] * o.dd[i2(i, j)];
    }
    return r;
  }

  // Composition with a scalar function given its first three derivatives
  // at this jet's value.
  Jet3 compose(double f0, double f1, double f2, double f3) const {
    Jet3 r;
    r.v = f0;
    for (int i = 0; i < 2; ++i) r.d[i] = f1 * d[i];
    static constexpr int P2[3][2] = {{0, 0}, {0, 1}, {1, 1}};
    for (int m = 0; m < 3; ++m) {
      const int i = P2[m][0], j = P2[m][1];
      r.dd[m] = f2 * d[i] * d[j] + f1 * dd[m];
    }
    static constexpr int P3[4][3] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    for (int m = 0; m < 4; ++m) {
      const int i = P3[m][0], j = P3[m][1], k = P3[m][2];
      r.ddd[m] = f3 * d[i] * d[j] * d[k] +
                 f2 * (dd[i2(i, j)] * d[k] + dd[i2(i, k)] * d[j] +
                       dd[i2(j, k)] * d[i]) +
                 f1 * ddd[m];
    }
    return r;
  }

  Jet3 operator/(const Jet3& o) const {
    const double t = o.v;
    if (t == 0.0) throw std::domain_error("Jet3: division by zero");
    const Jet3 inv = o.compose(1.0 / t, -1.0 / (t * t), 2.0 / (t * t * t),
                               -6.0 / (t * t * t * t));
    return *this * inv;
  }

  Jet3& operator+=(const Jet3& o) { return *this = *this + o; }
  Jet3& operator-=(const Jet3& o) { return *this = *this - o; }
  Jet3& operator*=(const Jet3& o) { return *this = *this * o; }
  Jet3& operator/=(const Jet3& o) { return *this = *this / o; }
};

inline Jet3 operator+(double a, const Jet3& b) { return Jet3(a) + b; }
inline Jet3 operator-(double a, const Jet3& b) { return Jet3(a) - b; }
inline Jet3 operator*(double a, const Jet3& b) { return Jet3(a) * b; }
inline Jet3 operator/(double a, const Jet3& b) { return Jet3(a) / b; }

inline Jet3 log(const Jet3& x) {
  if (x.v <= 0.0) throw std::domain_error("Jet3: log of non-positive value");
  const double t = x.v;
  return x.compose(std::log(t), 1.0 / t, -1.0 / (t * t), 2.0 / (t * t * t));
}

inline Jet3 exp(const Jet3& x) {
  const double e = std::exp(x.v);
  return x.compose(e, e, e, e);
}

inline Jet3 sqrt(const Jet3& x) {
  if (x.v <= 0.0) throw std::domain_error("Jet3: sqrt of non-positive value");
  const double s = std::sqrt(x.v);
  return x.compose(s, 0.5 / s, -0.25 / (s * x.v), 0.375 / (s * x.v * x.v));
}

inline Jet3 sin(const Jet3& x) {
  const double s = std::sin(x.v), c = std::cos(x.v);
  return x.compose(s, c, -s, -c);
}

inline Jet3 cos(const Jet3& x) {
  const double s = std::sin(x.v), c = std::cos(x.v);
  return x.compose(c, -s, -c, s);
}

inline Jet3 tanh(const Jet3& x) {
  const double t = std::tanh(x.v);
  const double s2 = 1.0 - t * t;  // sech^2
  // (tanh)' = s2, '' = -2 t s2, ''' = s2 (6 t^2 - 2) s2 ... derive:
  // f' = 1 - f^2; f'' = -2 f f'; f''' = -2 (f'^2 + f f'').
  const double f1 = s2;
  const double f2 = -2.0 * t * s2;
  const double f3 = -2.0 * (s2 * s2 + t * f2);
  return x.compose(t, f1, f2, f3);
}

inline Jet3 cosh(const Jet3& x) {
  const double c = std::cosh(x.v), s = std::sinh(x.v);
  return x.compose(c, s, c, s);
}

inline Jet3 sinh(const Jet3& x) {
  const double c = std::cosh(x.v), s = std::sinh(x.v);
  return x.compose(s, c, s, c);
}

inline Jet3 atan(const Jet3& x) {
  const double t = x.v;
  const double q = 1.0 + t * t;
  const double f1 = 1.0 / q;
  const double f2 = -2.0 * t / (q * q);
  const double f3 = (6.0 * t * t - 2.0) / (q * q * q);
  return x.compose(std::atan(t), f1, f2, f3);
}

inline Jet3 pow(const Jet3& x, double a) {
  if (x.v <= 0.0) throw std::domain_error("Jet3: pow of non-positive base");
  const double t = x.v;
  const double f0 = std::pow(t, a);
  return x.compose(f0, a * f0 / t, a * (a - 1.0) * f0 / (t * t),
                   a * (a - 1.0) * (a - 2.0) * f0 / (t * t * t));
}

// Principal-branch angle atan2(y, x) ∈ (-π, π]. The derivatives are those
// of the locally smooth branch; the value is discontinuous only across the
// negative real axis.
inline Jet3 atan2(const Jet3& y, const Jet3& x) {
  if (x.v == 0.0 && y.v == 0.0)
    throw std::domain_error("Jet3: atan2 at the origin");
  const double base = std::atan2(y.v, x.v);
  Jet3 branch;
  if (std::abs(x.v) >= std::abs(y.v)) {
    branch = atan(y / x);  // differs from atan2 by a constant on this branch
  } else {
    branch = -atan(x / y);
  }
  Jet3 r = branch;
  r.v = base;
  return r;
}

// |x| as a jet of the squared-norm composition; requires x != 0.
inline Jet3 jet_norm(const Jet3& x1, const Jet3& x2) {
  return sqrt(x1 * x1 + x2 * x2);
}

}  // namespace planeflow
