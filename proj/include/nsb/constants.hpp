#pragma once

// Physical constants, derived Planck scales and the SI <-> Planck-unit
// mapping. Every solver in the library works in units with hbar = c = M_P = 1;
// physical units only appear at the boundaries through these helpers.

#include <cmath>
#include <numbers>

#include "nsb/errors.hpp"

namespace nsb {

/// Joules per GeV (exact, from the SI definition of the elementary charge).
inline constexpr double joules_per_gev = 1.602176634e-10;

/// hbar [J s], c [m/s] and the Planck mass [kg]. Defaults are CODATA 2018.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;
  double c = 2.99792458e8;
  double planck_mass = 2.176434e-8;

  static constexpr PhysicalConstants codata2018() { return {}; }
  static constexpr PhysicalConstants natural() { return {1.0, 1.0, 1.0}; }

  void validate() const {
    auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!ok(hbar)) throw InputError("hbar must be finite and positive");
    if (!ok(c)) throw InputError("c must be finite and positive");
    if (!ok(planck_mass)) throw InputError("planck_mass must be finite and positive");
  }
};

/// Planck scales derived from a set of constants.
///
/// `omega` is the inverse Planck time. The free macroscopic solution
/// oscillates as exp(-2 i t / tau_p), so its angular frequency is
/// `oscillation_omega` = 2 / tau_p and the period of Re(psi) is pi * tau_p.
struct DerivedScales {
  double tau_p = 0;         // s
  double length_p = 0;      // m
  double energy_p = 0;      // J
  double energy_p_gev = 0;  // GeV
  double omega = 0;         // 1/s
  double oscillation_omega = 0;  // 1/s
  double period = 0;        // s
};

inline DerivedScales derive_scales(const PhysicalConstants& k) {
  k.validate();
  DerivedScales s;
  s.energy_p = k.planck_mass * k.c * k.c;
  s.tau_p = k.hbar / s.energy_p;
  s.length_p = k.c * s.tau_p;
  s.energy_p_gev = s.energy_p / joules_per_gev;
  s.omega = 1.0 / s.tau_p;
  s.oscillation_omega = 2.0 / s.tau_p;
  s.period = std::numbers::pi * s.tau_p;
  return s;
}

/// A point in physical units: time [s], position [m], potential [J], mass [kg].
struct PhysicalPoint {
  double time = 0;
  double position = 0;
  double potential = 0;
  double mass = 0;
};

/// The same point in Planck units: t / tau_p, x / l_p, V / (M_P c^2), M_P / m.
struct DimensionlessPoint {
  double time = 0;
  double position = 0;
  double potential = 0;
  double mass_ratio = 0;
};

inline DimensionlessPoint to_dimensionless(const PhysicalPoint& p, const DerivedScales& s,
                                           const PhysicalConstants& k) {
  if (!(p.mass > 0.0) || !std::isfinite(p.mass))
    throw InputError("particle mass must be finite and positive");
  return {p.time / s.tau_p, p.position / s.length_p, p.potential / s.energy_p,
          k.planck_mass / p.mass};
}

inline PhysicalPoint from_dimensionless(const DimensionlessPoint& d, const DerivedScales& s,
                                        const PhysicalConstants& k) {
  if (!(d.mass_ratio > 0.0) || !std::isfinite(d.mass_ratio))
    throw InputError("mass ratio must be finite and positive");
  return {d.time * s.tau_p, d.position * s.length_p, d.potential * s.energy_p,
          k.planck_mass / d.mass_ratio};
}

}  // namespace nsb
