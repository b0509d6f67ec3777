#pragma once

#include <stdexcept>

#include "planeflow/jet.hpp"

namespace planeflow {

// Radial C² cutoff: χ(r) = 0 for r ≤ inner, 1 for r ≥ outer, quintic
// smoothstep in between (monotone, C² at both junctions).
struct CutoffProfile {
  double inner = 1.0;
  double outer = 2.0;

  CutoffProfile() = default;
  CutoffProfile(double in, double out) : inner(in), outer(out) {
    if (!(out > in) || !(in >= 0.0))
      throw std::invalid_argument("CutoffProfile: need 0 <= inner < outer");
  }

  template <class Scalar>
  Scalar chi_of(const Scalar& r) const;

  double chi(double r) const {
    if (r <= inner) return 0.0;
    if (r >= outer) return 1.0;
    const double t = (r - inner) / (outer - inner);
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  }

  double chi_prime(double r) const {
    if (r <= inner || r >= outer) return 0.0;
    const double w = outer - inner;
    const double t = (r - inner) / w;
    return 30.0 * t * t * (1.0 - t) * (1.0 - t) / w;
  }

  double chi_second(double r) const {
    if (r <= inner || r >= outer) return 0.0;
    const double w = outer - inner;
    const double t = (r - inner) / w;
    return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t) / (w * w);
  }
};

// Jet-valued χ as a function of a radius jet. Constant branches propagate
// zero derivatives; the transition branch is a plain polynomial in r.
template <>
inline Jet3 CutoffProfile::chi_of(const Jet3& r) const {
  if (r.v <= inner) return Jet3(0.0);
  if (r.v >= outer) return Jet3(1.0);
  const Jet3 t = (r - inner) * (1.0 / (outer - inner));
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

template <>
inline double CutoffProfile::chi_of(const double& r) const {
  return chi(r);
}

// Jet-valued χ′ (needed where χ′ enters a formula directly, e.g. the flux
// carrier pressure).
inline Jet3 chi_prime_of(const CutoffProfile& c, const Jet3& r) {
  if (r.v <= c.inner || r.v >= c.outer) return Jet3(0.0);
  const double w = c.outer - c.inner;
  const Jet3 t = (r - c.inner) * (1.0 / w);
  return (30.0 / w) * t * t * (1.0 - t) * (1.0 - t);
}

}  // namespace planeflow
