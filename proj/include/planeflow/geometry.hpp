#pragma once

#include <cmath>
#include <stdexcept>

namespace planeflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  // 2D wedge (scalar cross product): x ∧ o
  double wedge(const Vec2& o) const { return x * o.y - y * o.x; }
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Mat2 {
  // row-major: a(i,j) = d u_i / d x_j for gradients
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  Mat2() = default;
  Mat2(double m11, double m12, double m21, double m22)
      : a11(m11), a12(m12), a21(m21), a22(m22) {}

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 outer(const Vec2& a, const Vec2& b) {
    return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
  }

  Mat2 operator+(const Mat2& o) const {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Mat2 operator-(const Mat2& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }
  Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
  Vec2 operator*(const Vec2& v) const {
    return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  double& operator()(int i, int j) {
    return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
  }
  double operator()(int i, int j) const {
    return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
  }

  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  double trace() const { return a11 + a22; }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;

  Point() = default;
  Point(double a, double b) : x1(a), x2(b) {}

  double r() const { return std::hypot(x1, x2); }
  double theta() const { return std::atan2(x2, x1); }
  Vec2 vec() const { return {x1, x2}; }
};

struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;

  Point cartesian() const { return {r * std::cos(theta), r * std::sin(theta)}; }
};

inline PolarPoint to_polar(const Point& x) {
  if (x.r() <= 0.0) throw std::domain_error("to_polar: point at the origin");
  return {x.r(), x.theta()};
}

// Unit vectors of the polar frame at angle theta.
inline Vec2 e_r(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Vec2 e_theta(double theta) { return {-std::sin(theta), std::cos(theta)}; }

// Counter-clockwise rotation by angle phi.
inline Mat2 rotation(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {c, -s, s, c};
}

inline Point rotate(const Point& x, double phi) {
  const Vec2 v = rotation(phi) * x.vec();
  return {v.x, v.y};
}

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a <= -M_PI) a += two_pi;
  if (a > M_PI) a -= two_pi;
  return a;
}

}  // namespace planeflow
