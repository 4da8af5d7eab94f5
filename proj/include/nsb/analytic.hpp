#pragma once

// Closed-form results for the pilot-wave equation in Planck units
// (hbar = c = M_P = 1). With r = M_P/m and v = V/(M_P c^2) the equation reads
//
//   i psi_t = -(a_xx/2) psi_xx - (a_tt/2) psi_tt + v psi
//
// where (a_xx, a_tt) depend on which form of the equation is selected.

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "nsb/errors.hpp"

namespace nsb {

using cplx = std::complex<double>;

inline constexpr cplx imag_unit{0.0, 1.0};

/// Mass-ratio rule separating m << M_P from m >> M_P: two decades.
inline constexpr double default_regime_threshold = 100.0;

enum class EquationForm { Full, Microscopic, Macroscopic };
enum class Regime { Microscopic, Macroscopic, Intermediate };

constexpr std::string_view to_string(EquationForm f) {
  switch (f) {
    case EquationForm::Full: return "full";
    case EquationForm::Microscopic: return "microscopic";
    case EquationForm::Macroscopic: return "macroscopic";
  }
  return "?";
}

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Microscopic: return "microscopic";
    case Regime::Macroscopic: return "macroscopic";
    case Regime::Intermediate: return "intermediate";
  }
  return "?";
}

/// r = M_P / m, v = V / (M_P c^2), and the form of the equation to use.
struct EquationParameters {
  double r = 1.0;
  double v = 0.0;
  EquationForm form = EquationForm::Full;

  void validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) throw InputError("mass ratio r must be finite and positive");
    if (!std::isfinite(v)) throw InputError("potential v must be finite");
  }
};

inline Regime classify_regime(double r, double threshold = default_regime_threshold) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("mass ratio r must be finite and positive");
  if (!(threshold > 1.0)) throw InputError("regime threshold must exceed 1");
  if (r >= threshold) return Regime::Microscopic;
  if (r <= 1.0 / threshold) return Regime::Macroscopic;
  return Regime::Intermediate;
}

/// Rejects a reduced form used outside the mass regime it approximates.
inline void check_regime(const EquationParameters& p,
                         double threshold = default_regime_threshold) {
  p.validate();
  const Regime regime = classify_regime(p.r, threshold);
  if (p.form == EquationForm::Macroscopic && regime != Regime::Macroscopic)
    throw InputError("macroscopic form requires r <= 1/threshold");
  if (p.form == EquationForm::Microscopic && regime != Regime::Microscopic)
    throw InputError("microscopic form requires r >= threshold");
}

/// Coefficients of  i a_t psi_t = -(a_xx/2) lap psi - (a_tt/2) psi_tt + v psi.
struct CanonicalCoefficients {
  double a_t = 1.0;
  double a_xx = 0.0;
  double a_tt = 1.0;
  double v = 0.0;

  friend bool operator==(const CanonicalCoefficients&, const CanonicalCoefficients&) = default;
};

/// One additive term on the right-hand side of  i psi_t = sum(terms),
/// expressed as multiples of lap(psi), psi and psi_tt.
struct EquationTerm {
  std::string_view label;
  double laplacian = 0.0;
  double potential = 0.0;
  double second_time = 0.0;
};

/// The right-hand side exactly as written for each form, term by term.
inline std::vector<EquationTerm> literal_terms(const EquationParameters& p) {
  p.validate();
  const EquationTerm kinetic{"kinetic", -0.5 * p.r, 0.0, 0.0};
  const EquationTerm potential{"potential", 0.0, 1.0, 0.0};
  const EquationTerm planck_kinetic{"planck-kinetic", -0.5, 0.0, 0.0};
  const EquationTerm telegraph_space{"telegraph-space", 0.5, 0.0, 0.0};
  const EquationTerm telegraph_time{"telegraph-time", 0.0, 0.0, -0.5};
  switch (p.form) {
    case EquationForm::Full:
      return {kinetic, potential, planck_kinetic, telegraph_space, telegraph_time};
    case EquationForm::Microscopic:
      return {kinetic, potential, telegraph_space, telegraph_time};
    case EquationForm::Macroscopic:
      return {planck_kinetic, telegraph_space, telegraph_time, potential};
  }
  return {};
}

/// The same right-hand side after the -lap/2 and +lap/2 pair has been cancelled.
inline std::vector<EquationTerm> reduced_terms(const EquationParameters& p) {
  p.validate();
  const EquationTerm kinetic{"kinetic", -0.5 * p.r, 0.0, 0.0};
  const EquationTerm potential{"potential", 0.0, 1.0, 0.0};
  const EquationTerm telegraph_space{"telegraph-space", 0.5, 0.0, 0.0};
  const EquationTerm telegraph_time{"telegraph-time", 0.0, 0.0, -0.5};
  switch (p.form) {
    case EquationForm::Full: return {kinetic, potential, telegraph_time};
    // Nothing cancels in the m << M_P form.
    case EquationForm::Microscopic: return {kinetic, potential, telegraph_space, telegraph_time};
    case EquationForm::Macroscopic: return {telegraph_time, potential};
  }
  return {};
}

inline CanonicalCoefficients assemble(const std::vector<EquationTerm>& terms, double v) {
  double lap = 0.0, pot = 0.0, tt = 0.0;
  for (const auto& t : terms) {
    lap += t.laplacian;
    pot += t.potential;
    tt += t.second_time;
  }
  return {1.0, -2.0 * lap, -2.0 * tt, pot * v};
}

inline CanonicalCoefficients reduce_equation(const EquationParameters& p) {
  return assemble(reduced_terms(p), p.v);
}

/// Exponents gamma of psi = exp(gamma t) for the spatially uniform equation,
/// i.e. the roots of gamma^2/2 + i gamma - v = 0.
struct CharacteristicRoots {
  cplx gamma1;
  cplx gamma2;
  cplx discriminant;
  bool stable = true;
};

inline CharacteristicRoots characteristic_roots(double v) {
  if (!std::isfinite(v)) throw InputError("potential v must be finite");
  CharacteristicRoots out;
  out.discriminant = cplx(-1.0 + 2.0 * v, 0.0);
  const cplx root = std::sqrt(out.discriminant);
  if (out.discriminant.real() < 0.0) {
    // Purely imaginary pair; recover the small root from the product to
    // avoid cancellation near v = 0.
    out.gamma2 = -imag_unit - root;
    out.gamma1 = -2.0 * v / out.gamma2;
  } else {
    out.gamma1 = -imag_unit + root;
    out.gamma2 = -imag_unit - root;
  }
  out.stable = v <= 0.5;
  return out;
}

/// psi(t) = A + B exp(-2 i t), the general uniform solution at v = 0.
struct FreeSolutionSpec {
  cplx A{1.0, 0.0};
  cplx B{-1.0, 0.0};

  /// The solution with psi(0) = 0.
  static FreeSolutionSpec vanishing_at_origin(cplx amplitude) { return {amplitude, -amplitude}; }
};

inline cplx free_solution(const FreeSolutionSpec& s, double t_hat) {
  if (!(t_hat >= 0.0)) throw InputError("time must be non-negative");
  return s.A + s.B * std::exp(-2.0 * imag_unit * t_hat);
}

inline cplx free_solution_derivative(const FreeSolutionSpec& s, double t_hat) {
  return -2.0 * imag_unit * s.B * std::exp(-2.0 * imag_unit * t_hat);
}

inline cplx free_solution_second_derivative(const FreeSolutionSpec& s, double t_hat) {
  return -4.0 * s.B * std::exp(-2.0 * imag_unit * t_hat);
}

/// Plane-wave frequencies for exp(i(k x - omega t)).
///
/// `planck` is the fast branch (omega = 2 at k = 0, v = 0) and is absent when
/// a_tt = 0. `schrodinger` is the slow branch; it tends to
/// (a_xx k^2/2 + v)/a_t as a_tt -> 0. When the discriminant is negative the
/// planck branch carries the positive imaginary part (the growing mode).
struct DispersionRoots {
  std::optional<cplx> planck;
  cplx schrodinger;
};

/// Branch frequencies with `lambda` standing in for k^2 (pass the discrete
/// Laplacian eigenvalue magnitude to get the semi-discrete dispersion).
inline DispersionRoots branch_frequencies(const CanonicalCoefficients& c, double lambda) {
  const double s = 0.5 * c.a_xx * lambda + c.v;
  const cplx sq = std::sqrt(cplx(c.a_t * c.a_t - 2.0 * c.a_tt * s, 0.0));
  DispersionRoots out;
  out.schrodinger = 2.0 * s / (c.a_t + sq);
  if (c.a_tt != 0.0) out.planck = (c.a_t + sq) / c.a_tt;
  return out;
}

struct DispersionQuery {
  double k_hat = 0.0;
  EquationParameters params;
};

/// Returns (omega_plus, omega_minus) = 1 +/- sqrt(1 - r k^2 - 2 v) for the
/// full form; the reduced forms substitute their own a_xx.
inline DispersionRoots dispersion_roots(const DispersionQuery& q) {
  if (!std::isfinite(q.k_hat)) throw InputError("wavenumber must be finite");
  return branch_frequencies(reduce_equation(q.params), q.k_hat * q.k_hat);
}

/// Wavenumber above which plane waves acquire a growing branch.
struct CriticalWavenumber {
  double value = std::numeric_limits<double>::infinity();
  bool all_unstable = false;
};

inline CriticalWavenumber critical_wavenumber(const CanonicalCoefficients& c) {
  CriticalWavenumber out;
  if (c.a_tt == 0.0) return out;
  const double threshold = c.a_t * c.a_t / c.a_tt - 2.0 * c.v;  // a_xx k^2 at the boundary
  if (threshold <= 0.0) {
    out.value = 0.0;
    out.all_unstable = true;
    return out;
  }
  if (c.a_xx > 0.0) out.value = std::sqrt(threshold / c.a_xx);
  return out;
}

inline CriticalWavenumber critical_wavenumber(const EquationParameters& p) {
  return critical_wavenumber(reduce_equation(p));
}

}  // namespace nsb
