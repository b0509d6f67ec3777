#pragma once

// Shared quadrature helpers for the numeric translation units.

namespace planeflow {
namespace quad {

// 16-point Gauss-Legendre rule on [-1, 1] (positive half; symmetric).
constexpr int kGL = 16;
constexpr double kGLx[kGL / 2] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGLw[kGL / 2] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

// Apply a GL panel [a, b]: calls fn(node, weight).
template <class Fn>
void gl_panel(double a, double b, Fn&& fn) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < kGL / 2; ++i) {
    fn(mid - half * kGLx[i], half * kGLw[i]);
    fn(mid + half * kGLx[i], half * kGLw[i]);
  }
}

}  // namespace quad
}  // namespace planeflow
