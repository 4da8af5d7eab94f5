#pragma once

// Measurements taken on solver output: Fourier-mode projections, fitted
// frequencies and growth rates, packet widths. Also the initial-data builders
// used by the scenarios.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "nsb/analytic.hpp"
#include "nsb/errors.hpp"
#include "nsb/pde.hpp"

namespace nsb {

/// Least-squares slope of y against x.
inline double fitted_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("slope fit needs >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw InputError("slope fit needs distinct abscissae");
  return sxy / sxx;
}

/// (1/n) sum_j f_j exp(-i k x_j): the coefficient of exp(i k x) in f.
inline cplx mode_amplitude(const ComplexField& f, double k) {
  cplx acc{};
  for (std::size_t j = 0; j < f.size(); ++j)
    acc += f[j] * std::exp(-imag_unit * (k * f.grid.x(j)));
  return acc / static_cast<double>(f.size());
}

/// Frequency omega of a(t) ~ exp(-i omega t), from the unwrapped phase.
/// Consecutive samples must differ in phase by less than pi.
inline double fit_frequency(std::span<const double> times, std::span<const cplx> amps) {
  std::vector<double> phase(amps.size());
  double offset = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double raw = std::arg(amps[i]);
    if (i > 0) {
      const double prev = phase[i - 1] - offset;
      double jump = raw - prev;
      if (jump > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
      if (jump < -std::numbers::pi) offset += 2.0 * std::numbers::pi;
    }
    phase[i] = raw + offset;
  }
  return -fitted_slope(times, phase);
}

/// Rate g of |a(t)| ~ exp(g t).
inline double fit_growth_rate(std::span<const double> times, std::span<const cplx> amps) {
  std::vector<double> logs(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (!(std::abs(amps[i]) > 0.0)) throw InputError("growth fit needs non-zero amplitudes");
    logs[i] = std::log(std::abs(amps[i]));
  }
  return fitted_slope(times, logs);
}

/// Rate g of |psi(t)| ~ exp(g t) for a scalar series.
inline double fit_growth_rate(std::span<const double> times, std::span<const cplx> values,
                              double from_time) {
  std::vector<double> t, a;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < from_time) continue;
    t.push_back(times[i]);
    a.push_back(std::log(std::abs(values[i])));
  }
  return fitted_slope(t, a);
}

/// Signed periodic distance x - center folded into [-L/2, L/2).
inline double periodic_offset(double x, double center, double length) {
  double d = std::fmod(x - center, length);
  if (d < -0.5 * length) d += length;
  if (d >= 0.5 * length) d -= length;
  return d;
}

/// Standard deviation of |psi|^2 about `center`.
inline double packet_width(const ComplexField& f, double center) {
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double p = std::norm(f[j]);
    const double d = periodic_offset(f.grid.x(j), center, f.grid.length);
    w += p;
    m1 += p * d;
    m2 += p * d * d;
  }
  if (!(w > 0.0)) throw InputError("width of a zero field is undefined");
  m1 /= w;
  return std::sqrt(m2 / w - m1 * m1);
}

/// Free Schroedinger spreading of a Gaussian with |psi|^2 width sigma0 under
/// i psi_t = -(a_xx/2) psi_xx.
inline double gaussian_width_law(double sigma0, double a_xx, double t) {
  const double tau = a_xx * t / (2.0 * sigma0 * sigma0);
  return sigma0 * std::sqrt(1.0 + tau * tau);
}

/// exp(-(x - center)^2 / (4 sigma^2)) exp(i k0 x), with periodic distance.
inline ComplexField gaussian_packet(const Grid& grid, double center, double sigma, double k0 = 0.0) {
  if (!(sigma > 0.0)) throw InputError("packet width must be positive");
  ComplexField f(grid);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double d = periodic_offset(grid.x(j), center, grid.length);
    f[j] = std::exp(-d * d / (4.0 * sigma * sigma)) * std::exp(imag_unit * (k0 * grid.x(j)));
  }
  return f;
}

inline ComplexField plane_wave(const Grid& grid, double k, cplx amplitude = 1.0) {
  ComplexField f(grid);
  for (std::size_t j = 0; j < grid.n; ++j) f[j] = amplitude * std::exp(imag_unit * (k * grid.x(j)));
  return f;
}

/// psi_t(0) = i (a_xx/2) lap psi - i v psi: the rate that puts the data on
/// the slow branch.
inline FieldState schrodinger_consistent_state(const ComplexField& psi,
                                               const CanonicalCoefficients& c,
                                               LaplacianKind kind) {
  const LaplacianOperator lap(psi.grid, kind);
  return {psi, schrodinger_rate(psi, c, lap)};
}

enum class Branch { Schrodinger, Planck };

/// Outcome of evolving one Fourier mode.
struct ModeMeasurement {
  double k = 0.0;
  cplx omega_discrete;   // branch frequency with the discrete Laplacian eigenvalue
  double frequency = 0.0;  // fitted Re(omega)
  double growth_rate = 0.0;  // fitted Im(omega)
  double horizon = 0.0;
  double dt = 0.0;
  int points_per_wavelength = 0;
};

struct ModeRunSettings {
  LaplacianKind laplacian = LaplacianKind::Spectral;
  Branch branch = Branch::Schrodinger;
  /// Horizon in periods of Re(omega) for oscillating modes.
  double periods = 10.0;
  /// Horizon cap, also used for non-oscillating or growing modes.
  double max_horizon = 5.0e4;
  /// Horizon for growing modes: this many e-foldings.
  double e_foldings = 20.0;
  int samples_per_period = 64;
  double safety = 0.9;
};

/// Evolves the pure branch eigenvector exp(i k x) of grid mode `mode_index`
/// and fits its frequency and growth rate from the projected amplitude.
/// Modes faster-growing than the probed one are filtered after each step.
inline ModeMeasurement measure_mode(const CanonicalCoefficients& c, const Grid& grid,
                                    long long mode_index, const ModeRunSettings& s = {}) {
  grid.validate();
  const double k = grid.wavenumber_step() * static_cast<double>(mode_index);
  const double lambda = -laplacian_eigenvalue(s.laplacian, k, grid.dx());
  const auto roots = branch_frequencies(c, lambda);
  if (s.branch == Branch::Planck && !roots.planck) throw InputError("no planck branch when a_tt = 0");
  const cplx omega = s.branch == Branch::Planck ? *roots.planck : roots.schrodinger;

  ModeMeasurement m;
  m.k = k;
  m.omega_discrete = omega;
  m.points_per_wavelength =
      mode_index == 0 ? static_cast<int>(grid.n)
                      : static_cast<int>(grid.n / static_cast<std::size_t>(std::llabs(mode_index)));

  const double freq = std::abs(omega.real());
  const double grow = std::abs(omega.imag());
  double horizon = s.max_horizon;
  if (grow > 0.0) horizon = std::min(horizon, s.e_foldings / grow);
  else if (freq > 0.0) horizon = std::min(horizon, s.periods * 2.0 * std::numbers::pi / freq);
  m.horizon = horizon;

  PdeProblem p;
  p.coeffs = c;
  p.grid = grid;
  p.laplacian = s.laplacian;
  p.safety = s.safety;
  p.t_end = horizon;
  const auto crit = critical_wavenumber(c);
  p.allow_unstable_content = crit.all_unstable || std::abs(k) > crit.value;
  const double keep = std::abs(k) + 0.5 * grid.wavenumber_step();
  if (crit.all_unstable) p.filter_cutoff = keep;
  else if (std::isfinite(crit.value)) p.filter_cutoff = std::max(keep, crit.value);

  const ComplexField psi = plane_wave(grid, k);
  p.initial = {psi, (-imag_unit * omega) * psi};

  const double dt = stability_dt(c, grid, s.safety, s.laplacian).dt;
  const double sample_dt =
      freq > 0.0 ? 2.0 * std::numbers::pi / freq / s.samples_per_period : horizon / 256.0;
  p.snapshot_stride = std::max(1, static_cast<int>(std::floor(std::min(sample_dt, horizon / 256.0) / dt)));
  m.dt = dt;

  const PdeSolution sol = evolve(p);
  std::vector<double> times;
  std::vector<cplx> amps;
  for (const auto& snap : sol.snapshots) {
    times.push_back(snap.t);
    amps.push_back(mode_amplitude(snap.state.psi, k));
  }
  m.frequency = fit_frequency(times, amps);
  m.growth_rate = fit_growth_rate(times, amps);
  return m;
}

}  // namespace nsb
