#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "planeflow/jet.hpp"

using planeflow::Jet3;

namespace {

// Generic smooth test expressions, written once over any scalar type.
template <class S>
S expr_a(const S& x, const S& y) {
  return exp(0.3 * sin(x)) * log(2.0 + cos(y)) + sqrt(x * x + y * y + 0.5);
}

template <class S>
S expr_b(const S& x, const S& y) {
  return atan2(y, x) * pow(x * x + y * y, 0.25) + tanh(x * y) / cosh(x - y) +
         sinh(0.3 * x);
}

template <class S>
S expr_c(const S& x, const S& y) {
  return (x * x - y) / (2.0 + x * y) + atan(x * y);
}

double expr_a(double x, double y) {
  return std::exp(0.3 * std::sin(x)) * std::log(2.0 + std::cos(y)) +
         std::sqrt(x * x + y * y + 0.5);
}
double expr_b(double x, double y) {
  return std::atan2(y, x) * std::pow(x * x + y * y, 0.25) +
         std::tanh(x * y) / std::cosh(x - y) + std::sinh(0.3 * x);
}
double expr_c(double x, double y) {
  return (x * x - y) / (2.0 + x * y) + std::atan(x * y);
}

struct Dirs {
  double g1, g2, g3;  // directional derivatives of order 1..3
};

// Richardson-extrapolated central differences along direction v.
template <class F>
Dirs fd_directional(F f, double x, double y, double vx, double vy, double h) {
  auto g = [&](double t) { return f(x + t * vx, y + t * vy); };
  auto d1 = [&](double s) { return (g(s) - g(-s)) / (2.0 * s); };
  auto d2 = [&](double s) { return (g(s) - 2.0 * g(0.0) + g(-s)) / (s * s); };
  auto d3 = [&](double s) {
    return (-g(-2.0 * s) + 2.0 * g(-s) - 2.0 * g(s) + g(2.0 * s)) /
           (2.0 * s * s * s);
  };
  auto rich = [&](auto d) { return (4.0 * d(h / 2.0) - d(h)) / 3.0; };
  return {rich(d1), rich(d2), rich(d3)};
}

Dirs jet_directional(const Jet3& j, double vx, double vy) {
  Dirs out;
  out.g1 = j.d[0] * vx + j.d[1] * vy;
  out.g2 = j.dd[0] * vx * vx + 2.0 * j.dd[1] * vx * vy + j.dd[2] * vy * vy;
  out.g3 = j.ddd[0] * vx * vx * vx + 3.0 * j.ddd[1] * vx * vx * vy +
           3.0 * j.ddd[2] * vx * vy * vy + j.ddd[3] * vy * vy * vy;
  return out;
}

template <class FJet, class FDouble>
void check_against_fd(FJet fj, FDouble fd, double x, double y) {
  const Jet3 j = fj(Jet3::variable(x, 0), Jet3::variable(y, 1));
  CHECK(j.v == doctest::Approx(fd(x, y)).epsilon(1e-12));
  const std::vector<std::pair<double, double>> dirs = {
      {1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}};
  for (auto [vx, vy] : dirs) {
    const Dirs a = jet_directional(j, vx, vy);
    const Dirs n = fd_directional(fd, x, y, vx, vy, 1e-2);
    const double s1 = std::max(1.0, std::abs(n.g1));
    const double s2 = std::max(1.0, std::abs(n.g2));
    const double s3 = std::max(1.0, std::abs(n.g3));
    CHECK(std::abs(a.g1 - n.g1) / s1 < 1e-6);
    CHECK(std::abs(a.g2 - n.g2) / s2 < 1e-6);
    CHECK(std::abs(a.g3 - n.g3) / s3 < 1e-4);
  }
}

}  // namespace

TEST_CASE("composite expressions match finite differences") {
  const std::vector<std::pair<double, double>> pts = {
      {0.7, -0.4}, {-1.2, 0.8}, {1.9, 1.3}};
  for (auto [x, y] : pts) {
    check_against_fd([](auto a, auto b) { return expr_a(a, b); },
                     [](double a, double b) { return expr_a(a, b); }, x, y);
    check_against_fd([](auto a, auto b) { return expr_b(a, b); },
                     [](double a, double b) { return expr_b(a, b); }, x, y);
    check_against_fd([](auto a, auto b) { return expr_c(a, b); },
                     [](double a, double b) { return expr_c(a, b); }, x, y);
  }
}

TEST_CASE("polar angle jet has the exact gradient on all branches") {
  // Including points where |y| > |x| and near the negative real axis.
  const std::vector<std::pair<double, double>> pts = {
      {1.0, 0.2}, {0.1, 1.0}, {-0.1, 1.0}, {-1.0, 0.05}, {-1.0, -0.05},
      {0.3, -2.0}};
  for (auto [x, y] : pts) {
    const Jet3 th = atan2(Jet3::variable(y, 1), Jet3::variable(x, 0));
    const double r2 = x * x + y * y;
    CHECK(th.v == doctest::Approx(std::atan2(y, x)).epsilon(1e-14));
    CHECK(th.d[0] == doctest::Approx(-y / r2).epsilon(1e-12));
    CHECK(th.d[1] == doctest::Approx(x / r2).epsilon(1e-12));
    // Harmonic: Laplacian of the angle vanishes, and so do the Laplacians
    // of its first derivatives.
    CHECK(std::abs(th.dd[0] + th.dd[2]) < 1e-12);
    CHECK(std::abs(th.ddd[0] + th.ddd[2]) < 1e-11);
    CHECK(std::abs(th.ddd[1] + th.ddd[3]) < 1e-11);
  }
}

TEST_CASE("log-norm jet is harmonic with the exact gradient") {
  const std::vector<std::pair<double, double>> pts = {
      {1.5, -0.7}, {-0.4, 0.9}, {10.0, 3.0}};
  for (auto [x, y] : pts) {
    const Jet3 lr =
        log(planeflow::jet_norm(Jet3::variable(x, 0), Jet3::variable(y, 1)));
    const double r2 = x * x + y * y;
    CHECK(lr.d[0] == doctest::Approx(x / r2).epsilon(1e-12));
    CHECK(lr.d[1] == doctest::Approx(y / r2).epsilon(1e-12));
    CHECK(std::abs(lr.dd[0] + lr.dd[2]) < 1e-13);
    CHECK(std::abs(lr.ddd[0] + lr.ddd[2]) < 1e-13);
    CHECK(std::abs(lr.ddd[1] + lr.ddd[3]) < 1e-13);
  }
}

TEST_CASE("division and composition identities") {
  const Jet3 x = Jet3::variable(0.8, 0);
  const Jet3 y = Jet3::variable(-0.3, 1);
  const Jet3 q = (x + y * y) / (x + y * y);
  CHECK(q.v == doctest::Approx(1.0));
  for (double d : q.d) CHECK(std::abs(d) < 1e-14);
  for (double d : q.dd) CHECK(std::abs(d) < 1e-14);
  for (double d : q.ddd) CHECK(std::abs(d) < 1e-13);

  const Jet3 idb = exp(log(2.0 + sin(x * y)));
  const Jet3 ref = 2.0 + sin(x * y);
  CHECK(idb.v == doctest::Approx(ref.v).epsilon(1e-14));
  for (int i = 0; i < 2; ++i)
    CHECK(idb.d[i] == doctest::Approx(ref.d[i]).epsilon(1e-13));
  for (int i = 0; i < 3; ++i)
    CHECK(idb.dd[i] == doctest::Approx(ref.dd[i]).epsilon(1e-12));
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(idb.ddd[i] - ref.ddd[i]) < 1e-12);
}
