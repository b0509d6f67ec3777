#include "planeflow/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "planeflow/wake.hpp"

namespace planeflow {

namespace {

constexpr double kPi = M_PI;

struct Seed {
  Jet3 x1, x2, r;
  Jet3 c, s;  // cosθ, sinθ as smooth jets (x/r, y/r)
};

Seed polar_seed(const Point& x) {
  if (x.r() <= 0.0) throw std::domain_error("field evaluation at the origin");
  Seed sd;
  sd.x1 = Jet3::variable(x.x1, 0);
  sd.x2 = Jet3::variable(x.x2, 1);
  sd.r = jet_norm(sd.x1, sd.x2);
  sd.c = sd.x1 / sd.r;
  sd.s = sd.x2 / sd.r;
  return sd;
}

FlowJet from_polar_velocity(const Jet3& ur, const Jet3& ut, const Jet3& p,
                            const Seed& sd) {
  const Jet3 u1 = ur * sd.c - ut * sd.s;
  const Jet3 u2 = ur * sd.s + ut * sd.c;
  return flowjet_from_jets(u1, u2, p);
}

}  // namespace

void eval_stokes_fundamental(const Point& x, Mat2& E, Vec2& e) {
  const double r2 = x.vec().norm2();
  if (r2 <= 0.0)
    throw std::domain_error("eval_stokes_fundamental: point at the origin");
  const double lr = 0.5 * std::log(r2);
  const double c = 1.0 / (4.0 * kPi);
  E = Mat2::identity() * (c * lr) - Mat2::outer(x.vec(), x.vec()) * (c / r2);
  e = x.vec() * (-1.0 / (2.0 * kPi * r2));
}

FlowJet eval_stokes_fundamental_column(int j, const Point& x) {
  if (j != 0 && j != 1)
    throw std::invalid_argument("stokes fundamental column: j must be 0 or 1");
  const Seed sd = polar_seed(x);
  const Jet3 lr = log(sd.r);
  const Jet3 r2 = sd.r * sd.r;
  const Jet3 xj = (j == 0) ? sd.x1 : sd.x2;
  const double c = 1.0 / (4.0 * kPi);
  const Jet3 u1 = c * ((j == 0 ? lr : Jet3(0.0)) - sd.x1 * xj / r2);
  const Jet3 u2 = c * ((j == 1 ? lr : Jet3(0.0)) - sd.x2 * xj / r2);
  const Jet3 p = -1.0 / (2.0 * kPi) * xj / r2;
  return flowjet_from_jets(u1, u2, p);
}

FlowJet eval_asym_term(int order, const std::vector<double>& coeffs,
                       const Point& x, const CutoffProfile& cutoff) {
  const std::size_t want = (order == 0) ? 2 : (order == 1) ? 3 : 4;
  if (order < 0 || order > 2)
    throw std::invalid_argument("eval_asym_term: order must be 0, 1 or 2");
  if (coeffs.size() != want)
    throw std::invalid_argument("eval_asym_term: wrong coefficient count");
  if (x.r() < cutoff.outer)
    throw std::domain_error(
        "eval_asym_term: closed form requested inside the cutoff band");

  const Seed sd = polar_seed(x);
  if (order == 0) {
    // ψ = (C·x^⊥)(log r − 1)/(4π), p = −(C·x)/(2π r²).
    const Jet3 psi =
        (coeffs[1] * sd.x1 - coeffs[0] * sd.x2) * (log(sd.r) - 1.0) *
        (1.0 / (4.0 * kPi));
    const Jet3 p = -(coeffs[0] * sd.x1 + coeffs[1] * sd.x2) /
                   (2.0 * kPi * sd.r * sd.r);
    return flowjet_from_stream(psi, p);
  }
  if (order == 1) {
    const Jet3 c2 = sd.c * sd.c - sd.s * sd.s;
    const Jet3 s2 = 2.0 * sd.c * sd.s;
    const Jet3 psi = (1.0 / (8.0 * kPi)) *
                     (coeffs[0] * s2 - coeffs[1] * c2 +
                      coeffs[2] * (1.0 - 2.0 * log(sd.r)));
    const Jet3 p =
        -(coeffs[0] * c2 + coeffs[1] * s2) / (2.0 * kPi * sd.r * sd.r);
    return flowjet_from_stream(psi, p);
  }
  // Order 2: explicit Cartesian combination of the A-vector, with the
  // r^-3 pressure carried by the two non-harmonic basis fields.
  const Jet3 c2 = sd.c * sd.c - sd.s * sd.s;
  const Jet3 s2 = 2.0 * sd.c * sd.s;
  const Jet3 c4 = c2 * c2 - s2 * s2;
  const Jet3 s4 = 2.0 * s2 * c2;
  const Jet3 c3 = c2 * sd.c - s2 * sd.s;
  const Jet3 s3 = s2 * sd.c + c2 * sd.s;
  const Jet3 w = 1.0 / (4.0 * kPi * sd.r * sd.r);
  const Jet3 u1 = w * (coeffs[0] * c2 + coeffs[1] * s2 +
                       coeffs[2] * (c2 + c4) + coeffs[3] * (s2 + s4));
  const Jet3 u2 = w * (coeffs[0] * s2 - coeffs[1] * c2 + coeffs[2] * s4 -
                       coeffs[3] * c4);
  const Jet3 p =
      (coeffs[2] * c3 + coeffs[3] * s3) / (kPi * sd.r * sd.r * sd.r);
  return flowjet_from_jets(u1, u2, p);
}

FlowJet eval_flux_carrier(double phi, const Point& x,
                          const CutoffProfile& cutoff) {
  if (x.r() <= cutoff.inner || phi == 0.0) return FlowJet{};  // χ ≡ 0 there
  const Seed sd = polar_seed(x);
  const Jet3 chi = cutoff.chi_of(sd.r);
  const Jet3 ur = phi * chi / (2.0 * kPi * sd.r);
  const Jet3 p = phi * chi_prime_of(cutoff, sd.r) / (2.0 * kPi * sd.r);
  return from_polar_velocity(ur, Jet3(0.0), p, sd);
}

FlowJet eval_harmonic_vortex(double m, const Point& x,
                             const CutoffProfile& cutoff) {
  if (x.r() <= cutoff.inner || m == 0.0) return FlowJet{};
  const Seed sd = polar_seed(x);
  const Jet3 chi = cutoff.chi_of(sd.r);
  const Jet3 psi = -(m / (4.0 * kPi)) * chi * log(sd.r);
  const Jet3 q = m * chi / (4.0 * kPi * sd.r);
  const Jet3 p = -0.5 * q * q;
  return flowjet_from_stream(psi, p);
}

FlowJet eval_hamel(double amp, double mu, const Point& x) {
  const Seed sd = polar_seed(x);
  const Jet3 theta = atan2(sd.x2, sd.x1);
  const Jet3 psi = amp * sqrt(sd.r) + mu * log(sd.r) + 1.5 * theta;
  // Pressure from analytic radial integration of the momentum equation.
  const Jet3 r = sd.r;
  const Jet3 p = -(amp * amp) / (4.0 * r) -
                 (2.0 * amp * mu / 3.0) / (r * sqrt(r)) -
                 (9.0 + 4.0 * mu * mu) / (8.0 * r * r);
  return flowjet_from_stream(psi, p);
}

FlowJet eval_euler_leading(double amp, double lambda, double theta0,
                           const Point& x) {
  if (std::abs(lambda) >= 1.0)
    throw std::invalid_argument("eval_euler_leading: need |lambda| < 1");
  const Seed sd = polar_seed(x);
  // cos(θ−θ₀) without the branch cut of atan2.
  const Jet3 cdth = sd.c * std::cos(theta0) + sd.s * std::sin(theta0);
  const Jet3 phi0 = amp * sqrt(1.0 - lambda * cdth);
  const Jet3 psi = sqrt(sd.r) * phi0;
  const Jet3 p = -(amp * amp) / (4.0 * sd.r);
  return flowjet_from_stream(psi, p);
}

Vec2 euler_net_force_formula(double amp, double lambda, double theta0) {
  double factor;
  if (std::abs(lambda) < 1e-8) {
    factor = 0.5 * lambda;  // series limit of (1−√(1−λ²))/λ
  } else {
    factor = (1.0 - std::sqrt(1.0 - lambda * lambda)) / lambda;
  }
  const double mag = kPi * kPi * amp * amp * factor;
  return {mag * std::cos(theta0), mag * std::sin(theta0)};
}

namespace {

struct CorrectorCoeffs {
  double gc, gs, fc, fs, p0;
};

CorrectorCoeffs corrector_coeffs(const std::vector<double>& a_vec, double nu) {
  const double a0 = a_vec[0] / (2.0 * kPi);
  const double a2 = -a_vec[1] / (4.0 * kPi);
  const double b2 = -a_vec[2] / (4.0 * kPi);
  const double beta = -a_vec[3] / (4.0 * kPi);
  // Fourier modes of the convective forcing ν ū₁·∇ū₁ = N_r(θ)/r³ e_r.
  const double c2 = nu * (-2.0 * a0 * a2 + 2.0 * beta * b2);
  const double s2 = nu * (-2.0 * a0 * b2 - 2.0 * beta * a2);
  const double c4 = -nu * (a2 * a2 - b2 * b2) / 2.0;
  const double s4 = -nu * a2 * b2;
  CorrectorCoeffs cc;
  cc.gc = -s2 / 8.0;
  cc.gs = c2 / 8.0;
  cc.fc = -s4 / 48.0;
  cc.fs = c4 / 48.0;
  cc.p0 = -nu * (a0 * a0 + (a2 * a2 + b2 * b2) / 2.0 + beta * beta) / 2.0;
  return cc;
}

}  // namespace

FlowJet eval_cross_corrector(const std::vector<double>& a_vec, double nu,
                             const Point& x, const CutoffProfile& cutoff) {
  if (a_vec.size() != 4)
    throw std::invalid_argument("eval_cross_corrector: a_vec must have 4 entries");
  if (x.r() < 2.0 * cutoff.inner)
    throw std::domain_error("eval_cross_corrector: inside the cutoff region");
  if (nu == 0.0) return FlowJet{};

  const CorrectorCoeffs cc = corrector_coeffs(a_vec, nu);
  const Seed sd = polar_seed(x);
  const Jet3 c2 = sd.c * sd.c - sd.s * sd.s;
  const Jet3 s2 = 2.0 * sd.c * sd.s;
  const Jet3 c4 = c2 * c2 - s2 * s2;
  const Jet3 s4 = 2.0 * s2 * c2;
  const Jet3 lr = log(sd.r);

  const Jet3 g = cc.gc * c2 + cc.gs * s2;
  const Jet3 gp = -2.0 * cc.gc * s2 + 2.0 * cc.gs * c2;
  const Jet3 f = cc.fc * c4 + cc.fs * s4;
  const Jet3 fp = -4.0 * cc.fc * s4 + 4.0 * cc.fs * c4;

  const Jet3 psi = g * lr + f;
  const Jet3 p = (-2.0 * gp * lr + (gp - 2.0 * fp) + cc.p0) / (sd.r * sd.r);
  return flowjet_from_stream(psi, p);
}

double cross_corrector_a2(const std::vector<double>& a_vec, A2Variant v) {
  if (a_vec.size() != 4)
    throw std::invalid_argument("cross_corrector_a2: a_vec must have 4 entries");
  const double A0 = a_vec[0], A3 = a_vec[3];
  const double arg = (v == A2Variant::PrintedLinear)
                         ? 4.0 * A0 * A0 + A3
                         : 4.0 * A0 * A0 + A3 * A3;
  return std::sqrt(arg);
}

FlowJet eval_perturb_iterate(int order, double A, double B, double M,
                             const Point& x, const CutoffProfile& cutoff) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("eval_perturb_iterate: order must be 1, 2 or 3");
  if (x.r() < cutoff.outer)
    throw std::domain_error("eval_perturb_iterate: inside the cutoff band");

  const Seed sd = polar_seed(x);
  const Jet3 c2 = sd.c * sd.c - sd.s * sd.s;
  const Jet3 s2 = 2.0 * sd.c * sd.s;
  const Jet3 r = sd.r;
  const Jet3 lr = log(r);

  Jet3 ur(0.0), ut(0.0), p(0.0);
  if (order == 1) {
    ur = -(A * c2 + B * s2) / (4.0 * kPi * r);
    ut = Jet3(-M) / (4.0 * kPi * r);
    p = (A * c2 + B * s2) / (2.0 * kPi * r * r);
  } else if (order == 2) {
    const double pref = M / (2.0 * std::pow(4.0 * kPi, 2));
    ur = pref * lr * (A * s2 - B * c2) / r;
    p = 2.0 * pref * lr * (A * s2 - B * c2) / (r * r);
  } else if (M != 0.0) {
    const double pref = M * M / std::pow(8.0 * kPi, 3);
    ur = pref * lr * lr * (A * c2 + B * s2) / r;
    p = 2.0 * pref * lr * lr * (A * c2 + B * s2) / (r * r);
  } else {
    const double pref = -(A * A + B * B) / (12.0 * std::pow(8.0 * kPi, 3));
    ur = pref * lr * (A * c2 + B * s2) / r;
    p = pref * lr * (A * c2 + B * s2) / (r * r);
  }
  return from_polar_velocity(ur, ut, p, sd);
}

// --- AnalyticField ----------------------------------------------------------

AnalyticField::AnalyticField(FieldKind k, std::vector<double> p,
                             CutoffProfile c)
    : kind(k), params(std::move(p)), cutoff(c) {}

double AnalyticField::validity_rmin() const {
  switch (kind) {
    case FieldKind::AsymTerm0:
    case FieldKind::AsymTerm1:
    case FieldKind::AsymTerm2:
    case FieldKind::PerturbIterate:
      return cutoff.outer;
    case FieldKind::CrossCorrector:
      return 2.0 * cutoff.inner;
    case FieldKind::FluxCarrier:
    case FieldKind::HarmonicVortex:
      return 0.0;
    default:
      return 0.0;  // defined away from the origin
  }
}

void AnalyticField::check_domain(const Point& x) const {
  const double rmin = validity_rmin();
  if (x.r() < rmin)
    throw std::domain_error(name() + ": point inside validity radius");
  if (x.r() <= 0.0 && rmin == 0.0 && kind != FieldKind::FluxCarrier &&
      kind != FieldKind::HarmonicVortex)
    throw std::domain_error(name() + ": point at the origin");
}

FlowJet AnalyticField::eval(const Point& x) const {
  switch (kind) {
    case FieldKind::StokesFundamentalColumn:
      return eval_stokes_fundamental_column(static_cast<int>(params.at(0)), x);
    case FieldKind::AsymTerm0:
      return eval_asym_term(0, params, x, cutoff);
    case FieldKind::AsymTerm1:
      return eval_asym_term(1, params, x, cutoff);
    case FieldKind::AsymTerm2:
      return eval_asym_term(2, params, x, cutoff);
    case FieldKind::FluxCarrier:
      return eval_flux_carrier(params.at(0), x, cutoff);
    case FieldKind::HarmonicVortex:
      return eval_harmonic_vortex(params.at(0), x, cutoff);
    case FieldKind::Hamel:
      return eval_hamel(params.at(0), params.at(1), x);
    case FieldKind::EulerLeading:
      return eval_euler_leading(params.at(0), params.at(1), params.at(2), x);
    case FieldKind::WakeUF:
      return eval_wake({params.at(0), params.at(1)}, x);
    case FieldKind::CrossCorrector:
      return eval_cross_corrector(
          {params.at(0), params.at(1), params.at(2), params.at(3)},
          params.at(4), x, cutoff);
    case FieldKind::PerturbIterate:
      return eval_perturb_iterate(static_cast<int>(params.at(0)), params.at(1),
                                  params.at(2), params.at(3), x, cutoff);
  }
  throw std::logic_error("AnalyticField: unknown kind");
}

AnalyticField AnalyticField::stokes_column(int j) {
  return {FieldKind::StokesFundamentalColumn, {static_cast<double>(j)}};
}
AnalyticField AnalyticField::asym_term(int order, std::vector<double> coeffs,
                                       CutoffProfile c) {
  const FieldKind k = (order == 0)   ? FieldKind::AsymTerm0
                      : (order == 1) ? FieldKind::AsymTerm1
                                     : FieldKind::AsymTerm2;
  return {k, std::move(coeffs), c};
}
AnalyticField AnalyticField::flux_carrier(double phi, CutoffProfile c) {
  return {FieldKind::FluxCarrier, {phi}, c};
}
AnalyticField AnalyticField::harmonic_vortex(double m, CutoffProfile c) {
  return {FieldKind::HarmonicVortex, {m}, c};
}
AnalyticField AnalyticField::hamel(double amp, double mu) {
  return {FieldKind::Hamel, {amp, mu}};
}
AnalyticField AnalyticField::euler_leading(double amp, double lambda,
                                           double theta0) {
  return {FieldKind::EulerLeading, {amp, lambda, theta0}};
}
AnalyticField AnalyticField::wake(Vec2 F) {
  return {FieldKind::WakeUF, {F.x, F.y}};
}
AnalyticField AnalyticField::cross_corrector(std::vector<double> a_vec,
                                             double nu, CutoffProfile c) {
  a_vec.push_back(nu);
  return {FieldKind::CrossCorrector, std::move(a_vec), c};
}
AnalyticField AnalyticField::perturb_iterate(int order, double A, double B,
                                             double M, CutoffProfile c) {
  return {FieldKind::PerturbIterate, {static_cast<double>(order), A, B, M}, c};
}

namespace {

double kv_get(const std::map<std::string, double>& kv, const std::string& key,
              double fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double kv_require(const std::map<std::string, double>& kv,
                  const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument("missing field parameter: " + key);
  return it->second;
}

}  // namespace

AnalyticField AnalyticField::from_name(const std::string& name,
                                       const std::map<std::string, double>& kv) {
  CutoffProfile c(kv_get(kv, "inner", 1.0), kv_get(kv, "outer", 2.0));
  if (name == "stokes-column")
    return stokes_column(static_cast<int>(kv_get(kv, "j", 0)));
  if (name == "asym0")
    return asym_term(0, {kv_require(kv, "c1"), kv_require(kv, "c2")}, c);
  if (name == "asym1")
    return asym_term(
        1, {kv_require(kv, "c1"), kv_require(kv, "c2"), kv_require(kv, "c3")},
        c);
  if (name == "asym2")
    return asym_term(2,
                     {kv_require(kv, "a1"), kv_require(kv, "a2"),
                      kv_require(kv, "a3"), kv_require(kv, "a4")},
                     c);
  if (name == "flux") return flux_carrier(kv_require(kv, "phi"), c);
  if (name == "harmonic") return harmonic_vortex(kv_require(kv, "M"), c);
  if (name == "hamel")
    return hamel(kv_require(kv, "A"), kv_get(kv, "mu", 0.0));
  if (name == "euler")
    return euler_leading(kv_require(kv, "A"), kv_require(kv, "lambda"),
                         kv_get(kv, "theta0", 0.0));
  if (name == "wake")
    return wake({kv_require(kv, "Fx"), kv_require(kv, "Fy")});
  if (name == "corrector")
    return cross_corrector({kv_require(kv, "a0"), kv_require(kv, "a1"),
                            kv_require(kv, "a2"), kv_require(kv, "a3")},
                           kv_get(kv, "nu", 1.0), c);
  if (name == "iterate")
    return perturb_iterate(static_cast<int>(kv_require(kv, "order")),
                           kv_get(kv, "A", 0.0), kv_get(kv, "B", 0.0),
                           kv_get(kv, "M", 0.0), c);
  throw std::invalid_argument("unknown field name: " + name);
}

std::string AnalyticField::name() const {
  switch (kind) {
    case FieldKind::StokesFundamentalColumn: return "stokes-column";
    case FieldKind::AsymTerm0: return "asym0";
    case FieldKind::AsymTerm1: return "asym1";
    case FieldKind::AsymTerm2: return "asym2";
    case FieldKind::FluxCarrier: return "flux";
    case FieldKind::HarmonicVortex: return "harmonic";
    case FieldKind::Hamel: return "hamel";
    case FieldKind::EulerLeading: return "euler";
    case FieldKind::WakeUF: return "wake";
    case FieldKind::CrossCorrector: return "corrector";
    case FieldKind::PerturbIterate: return "iterate";
  }
  return "unknown";
}

}  // namespace planeflow
