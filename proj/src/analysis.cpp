#include "planeflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "planeflow/invariants.hpp"
#include "planeflow/wake.hpp"

namespace planeflow {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}
}  // namespace

std::vector<double> log_radii(double rmin, double rmax, int n) {
  if (!(rmin > 0.0 && rmax > rmin) || n < 2)
    throw std::invalid_argument("log_radii: need 0 < rmin < rmax and n >= 2");
  std::vector<double> out(n);
  const double a = std::log(rmin), b = std::log(rmax);
  for (int i = 0; i < n; ++i)
    out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = rmin;
  out.back() = rmax;
  return out;
}

RayProfile ray_profile(const FieldFn& u, const std::vector<double>& radii,
                       int n_theta) {
  if (n_theta < 8) throw std::invalid_argument("ray_profile: n_theta < 8");
  RayProfile out;
  out.radii = radii;
  if (!std::is_sorted(radii.begin(), radii.end()))
    throw std::invalid_argument("ray_profile: radii must be increasing");
  out.d.reserve(radii.size());
  out.a.reserve(radii.size());
  out.degenerate.reserve(radii.size());
  const double ht = 2.0 * kPi / n_theta;
  std::vector<double> speed(n_theta);
  for (double r : radii) {
    double smax = -1.0, smin = 0.0;
    int jmax = 0;
    for (int j = 0; j < n_theta; ++j) {
      const double th = j * ht;
      speed[j] = u(Point{r * std::cos(th), r * std::sin(th)}).u.norm();
      if (j == 0 || speed[j] < smin) smin = speed[j];
      if (speed[j] > smax) {
        smax = speed[j];
        jmax = j;
      }
    }
    // Parabolic refinement of the argmax on the periodic stencil.
    const double sm = speed[(jmax + n_theta - 1) % n_theta];
    const double sp = speed[(jmax + 1) % n_theta];
    double dj = 0.0;
    const double denom = sm - 2.0 * smax + sp;
    if (denom < 0.0) dj = 0.5 * (sm - sp) / denom;
    const double a = wrap_angle((jmax + dj) * ht);
    const double d = smax - 0.25 * (sm - sp) * dj;
    const bool degenerate = smax <= 0.0 || (smax - smin) <= 1e-6 * smax;
    out.d.push_back(d);
    out.a.push_back(degenerate ? 0.0 : a);
    out.degenerate.push_back(degenerate);
  }
  return out;
}

double fit_profile_exponent(const RayProfile& profile) {
  std::vector<std::pair<double, double>> samples;
  for (std::size_t k = 0; k < profile.radii.size(); ++k)
    if (profile.d[k] > 0.0) samples.push_back({profile.radii[k], profile.d[k]});
  return fit_decay(samples).exponent;
}

CircularStats circular_stats(const std::vector<double>& angles,
                             bool fold_mod_pi) {
  if (angles.empty())
    throw std::invalid_argument("circular_stats: no angles");
  const double fold = fold_mod_pi ? 2.0 : 1.0;
  double c = 0.0, s = 0.0;
  for (double a : angles) {
    c += std::cos(fold * a);
    s += std::sin(fold * a);
  }
  const double n = static_cast<double>(angles.size());
  const double resultant = std::min(1.0, std::hypot(c, s) / n);
  CircularStats out;
  out.mean = std::atan2(s, c) / fold;
  if (fold_mod_pi && out.mean <= -kPi / 2) out.mean += kPi;
  out.std = (resultant > 1e-12)
                ? std::sqrt(-2.0 * std::log(resultant)) / fold
                : 10.0;  // fully dispersed / degenerate
  return out;
}

HarmonicFit harmonic_fit(const FieldFn& u, double rmin, double rmax, int n_r,
                         int n_theta) {
  // Residual at a sample: |r·u − μ e_θ| = √(t_r² + (t_θ − μ)²) with
  // t = r·u in the polar frame. The sup over samples is convex in μ;
  // minimize it by golden-section search on [min t_θ, max t_θ].
  const auto radii = log_radii(rmin, rmax, n_r);
  std::vector<double> tr, tt;
  tr.reserve(n_r * n_theta);
  tt.reserve(n_r * n_theta);
  double lo = 0.0, hi = 0.0;
  for (double r : radii)
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2.0 * kPi * j / n_theta;
      const Vec2 v = u(Point{r * std::cos(th), r * std::sin(th)}).u;
      tr.push_back(r * v.dot(e_r(th)));
      tt.push_back(r * v.dot(e_theta(th)));
      lo = std::min(lo, tt.back());
      hi = std::max(hi, tt.back());
    }
  auto sup = [&](double mu) {
    double m = 0.0;
    for (std::size_t k = 0; k < tt.size(); ++k)
      m = std::max(m, std::hypot(tr[k], tt[k] - mu));
    return m;
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = sup(x1), f2 = sup(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, hi - lo); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = sup(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = sup(x2);
    }
  }
  HarmonicFit out;
  out.mu = 0.5 * (a + b);
  out.sup_residual = sup(out.mu);
  return out;
}

namespace {

// Model speed of a (possibly axial, i.e. folded) wake pair with force
// magnitude A and direction angle θ₀ (F = −A(cosθ₀, sinθ₀)).
double wake_model_speed(double A, double theta0, double r, double theta,
                        bool fold_mod_pi) {
  // The profile lives on the slit plane: fold the angle offset into (−π, π].
  auto speed = [&](const Vec2& F) {
    const WakeParameters w = WakeParameters::from_force(F);
    return wake_leading_speed(w, r, w.theta0 + wrap_angle(theta - w.theta0));
  };
  const Vec2 F{-A * std::cos(theta0), -A * std::sin(theta0)};
  const double m1 = speed(F);
  if (!fold_mod_pi) return m1;
  return std::hypot(m1, speed(-F));
}

}  // namespace

WakeFitResult wake_fit(const FieldFn& u, double rmin, double rmax,
                       bool fold_mod_pi, int n_r, int n_theta) {
  const auto radii = log_radii(rmin, rmax, n_r);
  // Data: speeds on the polar sample grid.
  std::vector<double> rs, ths, data;
  rs.reserve(n_r * n_theta);
  double data_rms = 0.0;
  for (double r : radii)
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2.0 * kPi * j / n_theta;
      const double s =
          u(Point{r * std::cos(th), r * std::sin(th)}).u.norm();
      rs.push_back(r);
      ths.push_back(th);
      data.push_back(s);
      data_rms += s * s;
    }
  data_rms = std::sqrt(data_rms / data.size());

  // Seed from the ray profile: on the wake axis d(r) ≈ (2/3)a² r^{−1/3}.
  const RayProfile prof = ray_profile(u, radii, std::max(n_theta, 256));
  double a_acc = 0.0;
  int a_cnt = 0;
  std::vector<double> axis_angles;
  for (std::size_t k = 0; k < prof.radii.size(); ++k) {
    if (prof.degenerate[k] || prof.d[k] <= 0.0) continue;
    a_acc += std::sqrt(1.5 * std::cbrt(prof.radii[k]) * prof.d[k]);
    ++a_cnt;
    axis_angles.push_back(prof.a[k]);
  }
  WakeFitResult out;
  if (a_cnt == 0 || data_rms <= 0.0) {
    out.rejected = true;
    out.relative_rms = 1.0;
    return out;
  }
  const double a_seed = a_acc / a_cnt;
  double A = 16.0 * a_seed * a_seed * a_seed / 9.0;
  double theta0 = circular_stats(axis_angles, fold_mod_pi).mean;

  // The composite wake field carries a θ-uniform second-order speed tail of
  // order r^{−2/3}; a free nuisance amplitude b on that tail keeps it from
  // biasing the leading-profile amplitude.
  std::vector<double> tail(data.size());
  for (std::size_t k = 0; k < data.size(); ++k)
    tail[k] = std::pow(rs[k], -2.0 / 3.0);
  double b = 0.0;

  auto rms_at = [&](double Av, double t0, double bv) {
    double acc = 0.0;
    for (std::size_t k = 0; k < data.size(); ++k) {
      const double m = wake_model_speed(Av, t0, rs[k], ths[k], fold_mod_pi) +
                       bv * tail[k];
      acc += (m - data[k]) * (m - data[k]);
    }
    return std::sqrt(acc / data.size());
  };

  // Gauss-Newton in (log A, θ₀, b) with numeric Jacobian and backtracking.
  double la = std::log(std::max(A, 1e-12));
  double best = rms_at(std::exp(la), theta0, b);
  for (int it = 0; it < 60; ++it) {
    const double Av = std::exp(la);
    const double hA = 1e-6, hT = 1e-6;
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t k = 0; k < data.size(); ++k) {
      const double m0 = wake_model_speed(Av, theta0, rs[k], ths[k], fold_mod_pi);
      const double dA =
          (wake_model_speed(Av * std::exp(hA), theta0, rs[k], ths[k],
                            fold_mod_pi) -
           m0) /
          hA;
      const double dT =
          (wake_model_speed(Av, theta0 + hT, rs[k], ths[k], fold_mod_pi) - m0) /
          hT;
      const double res = m0 + b * tail[k] - data[k];
      const Eigen::Vector3d grad(dA, dT, tail[k]);
      jtj += grad * grad.transpose();
      jtr += grad * res;
    }
    // Levenberg damping keeps the step sane when the model is flat.
    const double lam = 1e-8 * jtj.trace();
    jtj.diagonal().array() += lam;
    const Eigen::Vector3d step_raw = jtj.ldlt().solve(-jtr);
    if (!step_raw.allFinite()) break;
    const double step_la = std::clamp(step_raw[0], -1.0, 1.0);
    const double step_t0 = std::clamp(step_raw[1], -0.5, 0.5);
    const double step_b = step_raw[2];
    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h < 8; ++h) {
      const double trial = rms_at(std::exp(la + scale * step_la),
                                  theta0 + scale * step_t0, b + scale * step_b);
      if (trial < best) {
        la += scale * step_la;
        theta0 += scale * step_t0;
        b += scale * step_b;
        const bool done = best - trial < 1e-12 * std::max(best, 1e-300);
        best = trial;
        accepted = true;
        if (done) it = 60;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) break;
  }

  A = std::exp(la);

  // Amplitude refinement: on the fitted axis the speed expands as
  // (2a²/3)r^{−1/3} + c·r^{−2/3} + e·r^{−1} + …; a least-squares fit of the
  // three-term tail isolates the leading coefficient far more accurately
  // than the profile least squares, which sees the second-order remainder.
  {
    const auto rr = log_radii(rmin, rmax, 12);
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (double r : rr) {
      const Eigen::Vector3d row(std::pow(r, -1.0 / 3.0),
                                std::pow(r, -2.0 / 3.0), 1.0 / r);
      const Point x{r * std::cos(theta0), r * std::sin(theta0)};
      const double d = u(x).u.norm();
      ata += row * row.transpose();
      atb += row * d;
    }
    const Eigen::Vector3d coef = ata.ldlt().solve(atb);
    if (coef[0] > 0.0) {
      const double a_ref = std::sqrt(1.5 * coef[0]);
      A = 16.0 * a_ref * a_ref * a_ref / 9.0;
    }
  }

  theta0 = wrap_angle(theta0);
  if (fold_mod_pi && theta0 <= -kPi / 2) theta0 += kPi;
  if (fold_mod_pi && theta0 > kPi / 2) theta0 -= kPi;
  out.F = Vec2{-A * std::cos(theta0), -A * std::sin(theta0)};
  out.rms = best;
  out.relative_rms = best / data_rms;
  // Wrong decay class shows up either as a poor fit or as a profile
  // exponent far from the wake's −1/3.
  const double expo = fit_profile_exponent(prof);
  out.rejected = out.relative_rms > 0.5 || expo < -0.75 || expo > -0.05;
  return out;
}

const char* to_string(PhaseStatus s) {
  switch (s) {
    case PhaseStatus::Ok: return "ok";
    case PhaseStatus::Degenerate: return "degenerate";
    case PhaseStatus::Diverged: return "diverged";
  }
  return "unknown";
}

std::vector<PhaseMapRow> phase_map(std::vector<SweepPoint>& sweep,
                                   const PhaseMapOptions& opts) {
  std::vector<PhaseMapRow> rows;
  rows.reserve(sweep.size());
  const auto radii = log_radii(opts.fit_rmin, opts.fit_rmax, opts.n_radii);
  for (auto& pt : sweep) {
    PhaseMapRow row;
    row.param1 = pt.p1;
    row.param2 = pt.p2;
    if (pt.status != SolveStatus::Converged) {
      row.status = PhaseStatus::Diverged;
      rows.push_back(row);
      continue;
    }
    SolverForcing forcing;
    const SolverForcing* fptr = nullptr;
    if (opts.make_forcing) {
      forcing = opts.make_forcing(pt.p1, pt.p2);
      if (!forcing.empty()) fptr = &forcing;
    }
    if (pt.solution.u_r.empty()) pt.solution.recover_fields(fptr);
    const FieldFn field = pt.solution.field();

    const RayProfile prof = ray_profile(field, radii, opts.n_theta);
    std::vector<double> angles;
    int n_degen = 0;
    for (std::size_t k = 0; k < prof.radii.size(); ++k) {
      if (prof.degenerate[k]) {
        ++n_degen;
        continue;
      }
      angles.push_back(prof.a[k]);
    }
    row.exponent = fit_profile_exponent(prof);
    if (angles.empty()) {
      row.status = PhaseStatus::Degenerate;
      row.angle_std = 10.0;
    } else {
      const CircularStats cs = circular_stats(angles, opts.fold_mod_pi);
      row.mean_angle = cs.mean;
      row.angle_std = cs.std;
      row.status = (2 * n_degen > static_cast<int>(prof.radii.size()))
                       ? PhaseStatus::Degenerate
                       : PhaseStatus::Ok;
    }

    const double rc = opts.contour_radius > 0.0
                          ? opts.contour_radius
                          : pt.solution.grid.r(1);
    const InvariantTriple inv =
        contour_invariants(field, opts.nu, rc, opts.n_quad);
    row.body_force = inv.force;
    row.body_torque = inv.torque;
    rows.push_back(row);
  }
  return rows;
}

void write_profile_csv(const std::string& path, const RayProfile& profile) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_profile_csv: cannot open " + path);
  os << "r,d,a\n";
  for (std::size_t k = 0; k < profile.radii.size(); ++k)
    os << fmt17(profile.radii[k]) << ',' << fmt17(profile.d[k]) << ','
       << fmt17(profile.a[k]) << '\n';
}

void write_phasemap_csv(const std::string& path,
                        const std::vector<PhaseMapRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_phasemap_csv: cannot open " + path);
  os << "param1,param2,exponent,mean_angle,angle_std,Fx,Fy,M,status\n";
  for (const auto& r : rows)
    os << fmt17(r.param1) << ',' << fmt17(r.param2) << ','
       << fmt17(r.exponent) << ',' << fmt17(r.mean_angle) << ','
       << fmt17(r.angle_std) << ',' << fmt17(r.body_force.x) << ','
       << fmt17(r.body_force.y) << ',' << fmt17(r.body_torque) << ','
       << to_string(r.status) << '\n';
}

namespace {

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                               "#ff7f0e", "#9467bd", "#8c564b"};

struct Ticks {
  std::vector<double> values;
};

Ticks linear_ticks(double lo, double hi) {
  Ticks t;
  if (!(hi > lo)) {
    t.values = {lo};
    return t;
  }
  const double span = hi - lo;
  double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
  if (span / step > 8.0) step *= 2.0;
  if (span / step > 8.0) step *= 2.5;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span;
       v += step)
    t.values.push_back(v);
  return t;
}

Ticks log_ticks(double lo, double hi) {
  Ticks t;
  for (int e = static_cast<int>(std::floor(lo));
       e <= static_cast<int>(std::ceil(hi)); ++e)
    if (e >= lo - 1e-9 && e <= hi + 1e-9)
      t.values.push_back(static_cast<double>(e));
  if (t.values.empty()) t.values = {lo, hi};
  return t;
}

std::string tick_label(double v, bool log_axis) {
  char buf[40];
  if (log_axis) {
    std::snprintf(buf, sizeof(buf), "1e%d", static_cast<int>(std::lround(v)));
  } else {
    std::snprintf(buf, sizeof(buf), "%.4g", v);
  }
  return buf;
}

// Five-stop sequential colormap (dark blue → yellow).
void colormap(double t, int& R, int& G, int& B) {
  static const double stops[5][3] = {{0.267, 0.005, 0.329},
                                     {0.229, 0.322, 0.546},
                                     {0.128, 0.567, 0.551},
                                     {0.369, 0.789, 0.383},
                                     {0.993, 0.906, 0.144}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(t));
  const double f = t - k;
  R = static_cast<int>(255.0 * (stops[k][0] + f * (stops[k + 1][0] - stops[k][0])));
  G = static_cast<int>(255.0 * (stops[k][1] + f * (stops[k + 1][1] - stops[k][1])));
  B = static_cast<int>(255.0 * (stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
}

}  // namespace

void svg_line_plot(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   const std::vector<PlotSeries>& series, bool log_x) {
  const double W = 720, H = 480, ml = 80, mr = 24, mt = 48, mb = 64;
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  bool first = true;
  for (const auto& s : series)
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      const double xv = log_x ? std::log10(s.x[k]) : s.x[k];
      if (first) {
        xlo = xhi = xv;
        ylo = yhi = s.y[k];
        first = false;
      } else {
        xlo = std::min(xlo, xv);
        xhi = std::max(xhi, xv);
        ylo = std::min(ylo, s.y[k]);
        yhi = std::max(yhi, s.y[k]);
      }
    }
  if (xhi <= xlo) xhi = xlo + 1.0;
  if (yhi <= ylo) {
    yhi = ylo + 1.0;
    ylo -= 1.0;
  }
  const double ypad = 0.05 * (yhi - ylo);
  ylo -= ypad;
  yhi += ypad;
  auto X = [&](double v) {
    const double t = log_x ? std::log10(v) : v;
    return ml + (t - xlo) / (xhi - xlo) * (W - ml - mr);
  };
  auto Y = [&](double v) { return H - mb - (v - ylo) / (yhi - ylo) * (H - mt - mb); };

  std::ofstream os(path);
  if (!os) throw std::runtime_error("svg_line_plot: cannot open " + path);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  for (const auto& s : series) {
    os << "<!-- data " << xml_escape(s.name) << "\n";
    for (std::size_t k = 0; k < s.x.size(); ++k)
      os << fmt17(s.x[k]) << ',' << fmt17(s.y[k]) << '\n';
    os << "-->\n";
  }
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << mt - 20
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
     << xml_escape(title) << "</text>\n";

  const Ticks xt = log_x ? log_ticks(xlo, xhi) : linear_ticks(xlo, xhi);
  const Ticks yt = linear_ticks(ylo, yhi);
  os << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (double v : xt.values) {
    const double px = ml + (v - xlo) / (xhi - xlo) * (W - ml - mr);
    os << "<line x1=\"" << px << "\" y1=\"" << mt << "\" x2=\"" << px
       << "\" y2=\"" << H - mb << "\"/>\n";
  }
  for (double v : yt.values)
    os << "<line x1=\"" << ml << "\" y1=\"" << Y(v) << "\" x2=\"" << W - mr
       << "\" y2=\"" << Y(v) << "\"/>\n";
  os << "</g>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
     << "\" height=\"" << H - mt - mb
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (double v : xt.values) {
    const double px = ml + (v - xlo) / (xhi - xlo) * (W - ml - mr);
    os << "<text x=\"" << px << "\" y=\"" << H - mb + 18
       << "\" text-anchor=\"middle\">" << tick_label(v, log_x) << "</text>\n";
  }
  for (double v : yt.values)
    os << "<text x=\"" << ml - 6 << "\" y=\"" << Y(v) + 4
       << "\" text-anchor=\"end\">" << tick_label(v, false) << "</text>\n";
  os << "</g>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 16
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << xml_escape(xlabel) << "</text>\n";
  os << "<text x=\"20\" y=\"" << H / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\""
     << " transform=\"rotate(-90 20 " << H / 2 << ")\">" << xml_escape(ylabel)
     << "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* color = kSeriesColors[ci % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k)
      os << X(s.x[k]) << ',' << Y(s.y[k]) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << ml + 12 << "\" y=\"" << mt + 18 + 18 * ci
       << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" << color
       << "\">" << xml_escape(s.name) << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
}

void svg_heatmap(const std::string& path, const std::string& title,
                 const std::string& xlabel, const std::string& ylabel,
                 const std::vector<double>& param1,
                 const std::vector<double>& param2,
                 const std::vector<double>& z) {
  if (param1.size() != z.size() || param2.size() != z.size() || z.empty())
    throw std::invalid_argument("svg_heatmap: mismatched inputs");
  std::set<double> xs(param1.begin(), param1.end());
  std::set<double> ys(param2.begin(), param2.end());
  const std::vector<double> xv(xs.begin(), xs.end());
  const std::vector<double> yv(ys.begin(), ys.end());
  const int nx = static_cast<int>(xv.size()), ny = static_cast<int>(yv.size());

  double zlo = z[0], zhi = z[0];
  for (double v : z) {
    zlo = std::min(zlo, v);
    zhi = std::max(zhi, v);
  }
  if (zhi <= zlo) zhi = zlo + 1.0;

  const double W = 720, H = 520, ml = 90, mr = 110, mt = 48, mb = 72;
  const double cw = (W - ml - mr) / nx, ch = (H - mt - mb) / ny;

  std::ofstream os(path);
  if (!os) throw std::runtime_error("svg_heatmap: cannot open " + path);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<!-- data param1,param2,z\n";
  for (std::size_t k = 0; k < z.size(); ++k)
    os << fmt17(param1[k]) << ',' << fmt17(param2[k]) << ',' << fmt17(z[k])
       << '\n';
  os << "-->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << mt - 20
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
     << xml_escape(title) << "</text>\n";

  auto col_of = [&](double p) {
    return static_cast<int>(std::lower_bound(xv.begin(), xv.end(), p) -
                            xv.begin());
  };
  auto row_of = [&](double p) {
    return static_cast<int>(std::lower_bound(yv.begin(), yv.end(), p) -
                            yv.begin());
  };
  for (std::size_t k = 0; k < z.size(); ++k) {
    const int i = col_of(param1[k]), j = row_of(param2[k]);
    int R, G, B;
    colormap((z[k] - zlo) / (zhi - zlo), R, G, B);
    const double px = ml + i * cw;
    const double py = H - mb - (j + 1) * ch;  // param2 increases upward
    char color[16];
    std::snprintf(color, sizeof(color), "#%02x%02x%02x", R, G, B);
    os << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cw
       << "\" height=\"" << ch << "\" fill=\"" << color << "\"/>\n";
  }
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
     << "\" height=\"" << H - mt - mb
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i < nx; ++i)
    os << "<text x=\"" << ml + (i + 0.5) * cw << "\" y=\"" << H - mb + 18
       << "\" text-anchor=\"middle\">" << tick_label(xv[i], false)
       << "</text>\n";
  for (int j = 0; j < ny; ++j)
    os << "<text x=\"" << ml - 6 << "\" y=\"" << H - mb - (j + 0.5) * ch + 4
       << "\" text-anchor=\"end\">" << tick_label(yv[j], false) << "</text>\n";
  os << "</g>\n";
  os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 18
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << xml_escape(xlabel) << "</text>\n";
  os << "<text x=\"22\" y=\"" << H / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\""
     << " transform=\"rotate(-90 22 " << H / 2 << ")\">" << xml_escape(ylabel)
     << "</text>\n";

  // Colorbar.
  const double cbx = W - mr + 24, cbw = 20, cby = mt, cbh = H - mt - mb;
  const int ncb = 64;
  for (int k = 0; k < ncb; ++k) {
    int R, G, B;
    colormap((k + 0.5) / ncb, R, G, B);
    char color[16];
    std::snprintf(color, sizeof(color), "#%02x%02x%02x", R, G, B);
    os << "<rect x=\"" << cbx << "\" y=\"" << cby + cbh - (k + 1) * cbh / ncb
       << "\" width=\"" << cbw << "\" height=\"" << cbh / ncb + 0.5
       << "\" fill=\"" << color << "\"/>\n";
  }
  os << "<rect x=\"" << cbx << "\" y=\"" << cby << "\" width=\"" << cbw
     << "\" height=\"" << cbh << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << cbx + cbw + 4 << "\" y=\"" << cby + cbh
     << "\">" << tick_label(zlo, false) << "</text>\n";
  os << "<text x=\"" << cbx + cbw + 4 << "\" y=\"" << cby + 10 << "\">"
     << tick_label(zhi, false) << "</text>\n";
  os << "<text x=\"" << cbx + cbw + 4 << "\" y=\"" << cby + cbh / 2 << "\">"
     << tick_label(0.5 * (zlo + zhi), false) << "</text>\n";
  os << "</g>\n";
  os << "</svg>\n";
}

}  // namespace planeflow
