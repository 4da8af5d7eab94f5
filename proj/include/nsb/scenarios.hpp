#pragma once

// Scenario computations. Each function takes typed parameters and returns the
// series it produced; writing files and manifests happens in runner.hpp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nsb/analytic.hpp"
#include "nsb/constants.hpp"
#include "nsb/diagnostics.hpp"
#include "nsb/errors.hpp"
#include "nsb/integrator.hpp"
#include "nsb/pde.hpp"

namespace nsb {

// ---------------------------------------------------------------------------
// fig1: Re psi of the free macroscopic solution over a horizon, analytic and RK4.

struct Fig1Series {
  double horizon = 0.0;
  double dt = 0.0;
  int stride = 1;
  std::vector<double> t;
  std::vector<cplx> analytic;
  std::vector<cplx> numeric;

  double max_deviation = 0.0;
  double re_min = 0.0;
  double re_max = 0.0;
  /// Mean spacing of upward crossings of Re psi = A.
  double period = 0.0;
  int complete_periods = 0;
};

/// Upward crossings of `level` by y(t), linearly interpolated.
inline std::vector<double> upward_crossings(const std::vector<double>& t,
                                            const std::vector<double>& y, double level) {
  std::vector<double> out;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double a = y[i - 1] - level, b = y[i] - level;
    if (a < 0.0 && b >= 0.0) out.push_back(t[i - 1] + (t[i] - t[i - 1]) * (-a) / (b - a));
  }
  return out;
}

/// The step is pi / (samples_per_period * substeps) with the smallest
/// `substeps` that keeps it <= max_dt, so samples land exactly on multiples
/// of pi / samples_per_period.
inline Fig1Series scenario_fig1(double amplitude, double horizon, int samples_per_period,
                                double max_dt) {
  if (amplitude == 0.0 || !std::isfinite(amplitude)) throw InputError("amplitude A must be non-zero");
  if (!(horizon > 0.0)) throw InputError("horizon must be positive");
  if (samples_per_period < 2) throw InputError("samples_per_period must be >= 2");
  if (!(max_dt > 0.0)) throw InputError("dt must be positive");

  const double sample_dt = std::numbers::pi / samples_per_period;
  const int substeps = static_cast<int>(std::ceil(sample_dt / max_dt - 1e-12));
  Fig1Series s;
  s.horizon = horizon;
  s.dt = sample_dt / substeps;
  s.stride = substeps;

  const auto spec = FreeSolutionSpec::vanishing_at_origin(amplitude);
  const auto traj = integrate(vanishing_initial_state(amplitude), UniformRhs{0.0}, horizon, s.dt, s.stride);
  s.t = traj.times;
  s.numeric.reserve(traj.states.size());
  s.analytic.reserve(traj.states.size());
  std::vector<double> re(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    s.numeric.push_back(traj.states[i].psi);
    s.analytic.push_back(free_solution(spec, s.t[i]));
    s.max_deviation = std::max(s.max_deviation, std::abs(s.numeric[i] - s.analytic[i]));
    re[i] = s.numeric[i].real() / amplitude;
  }
  s.re_min = *std::min_element(re.begin(), re.end()) * amplitude;
  s.re_max = *std::max_element(re.begin(), re.end()) * amplitude;
  if (amplitude < 0) std::swap(s.re_min, s.re_max);
  const auto up = upward_crossings(s.t, re, 1.0);
  if (up.size() >= 2) {
    s.complete_periods = static_cast<int>(up.size()) - 1;
    s.period = (up.back() - up.front()) / s.complete_periods;
  }
  return s;
}

// ---------------------------------------------------------------------------
// dispersion_scan: measured single-mode frequencies against the analytic branch.

struct DispersionRow {
  double k_hat = 0.0;
  double omega_minus_analytic = 0.0;
  double omega_minus_measured = 0.0;
  double rel_err = 0.0;
  double omega_minus_discrete = 0.0;
  double growth_rate_analytic = 0.0;
  double growth_rate_measured = 0.0;
  int points_per_wavelength = 0;
  std::string flag;  // ok | unresolved | unstable
};

struct DispersionScanSettings {
  double r = 1.0;
  double v = 0.0;
  std::size_t n = 256;
  /// Nominal domain; each k gets the nearest length holding whole wavelengths.
  double length = 32.0 * std::numbers::pi;
  LaplacianKind laplacian = LaplacianKind::Spectral;
  double safety = 0.9;
  bool allow_unstable = false;
  double max_horizon = 5.0e4;
};

inline constexpr int min_points_per_wavelength = 8;

inline DispersionRow measure_dispersion_point(double k, const DispersionScanSettings& s) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw InputError("wavenumbers must be finite and >= 0");
  const EquationParameters params{s.r, s.v, EquationForm::Full};
  const auto coeffs = reduce_equation(params);
  const auto crit = critical_wavenumber(params);
  const bool unstable = crit.all_unstable || k > crit.value;
  if (unstable && !s.allow_unstable)
    throw InputError("wavenumber " + std::to_string(k) + " lies above the critical wavenumber");

  Grid grid{s.n, s.length};
  long long cycles = 0;
  if (k > 0.0) {
    cycles = std::max(1LL, std::llround(k * s.length / (2.0 * std::numbers::pi)));
    grid.length = 2.0 * std::numbers::pi * static_cast<double>(cycles) / k;
  }

  const auto analytic = dispersion_roots({k, params});
  ModeRunSettings run;
  run.laplacian = s.laplacian;
  run.safety = s.safety;
  run.max_horizon = s.max_horizon;
  run.branch = unstable ? Branch::Planck : Branch::Schrodinger;
  if (!unstable && analytic.schrodinger.real() == 0.0) run.max_horizon = std::min(run.max_horizon, 100.0);
  const auto m = measure_mode(coeffs, grid, cycles, run);

  DispersionRow row;
  row.k_hat = k;
  row.omega_minus_analytic = analytic.schrodinger.real();
  row.omega_minus_measured = m.frequency;
  const double scale = std::abs(row.omega_minus_analytic);
  row.rel_err = std::abs(row.omega_minus_measured - row.omega_minus_analytic) / (scale > 0.0 ? scale : 1.0);
  row.omega_minus_discrete = m.omega_discrete.real();
  row.growth_rate_analytic = analytic.planck ? analytic.planck->imag() : 0.0;
  row.growth_rate_measured = m.growth_rate;
  row.points_per_wavelength = m.points_per_wavelength;
  row.flag = unstable ? "unstable"
             : m.points_per_wavelength < min_points_per_wavelength ? "unresolved"
                                                                    : "ok";
  return row;
}

inline std::vector<DispersionRow> scenario_dispersion_scan(const std::vector<double>& k_values,
                                                           const DispersionScanSettings& s) {
  std::vector<DispersionRow> rows;
  rows.reserve(k_values.size());
  for (double k : k_values) rows.push_back(measure_dispersion_point(k, s));
  return rows;
}

// ---------------------------------------------------------------------------
// regime_compare: full vs macroscopic form for uniform and packet data.

struct RegimeRow {
  double r = 0.0;
  double distance_uniform = 0.0;
  double distance_packet = 0.0;
};

struct RegimeCompareSettings {
  double v = 0.0;
  double horizon = 20.0;
  std::size_t n = 128;
  double length = 100.0;
  double sigma = 5.0;
  double noise = 0.05;
  std::uint64_t seed = 0;
  double safety = 0.9;
  LaplacianKind laplacian = LaplacianKind::Stencil;
};

/// Gaussian plus seeded white noise, band-limited to |k| <= k_cut.
inline ComplexField band_limited_packet(const Grid& grid, double sigma, double noise, double k_cut,
                                        std::uint64_t seed) {
  ComplexField f = gaussian_packet(grid, 0.5 * grid.length, sigma);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : f.values) {
    const double re = u(rng);
    const double im = u(rng);
    z += noise * cplx(re, im);
  }
  FieldState s{f, ComplexField(grid)};
  return spectral_filter(std::move(s), k_cut).psi;
}

namespace detail {

/// Sup over time and space of |psi_a - psi_b| for two runs from the same
/// initial state, advanced with a common step.
inline double sup_distance_between(const CanonicalCoefficients& a, const CanonicalCoefficients& b,
                                   const Grid& grid, const FieldState& initial, double horizon,
                                   double safety, LaplacianKind kind) {
  PdeProblem pa;
  pa.grid = grid;
  pa.initial = initial;
  pa.t_end = horizon;
  pa.laplacian = kind;
  pa.dt = std::min(stability_dt(a, grid, safety, kind).dt, stability_dt(b, grid, safety, kind).dt);
  PdeProblem pb = pa;
  pa.coeffs = a;
  pb.coeffs = b;
  for (PdeProblem* p : {&pa, &pb}) {
    const auto crit = critical_wavenumber(p->coeffs);
    p->allow_unstable_content = crit.all_unstable;
    if (!crit.all_unstable && std::isfinite(crit.value) &&
        stability_dt(p->coeffs, grid, safety, kind).has_unstable_modes)
      p->filter_cutoff = crit.value;
  }
  const auto ra = evolve(pa);
  const auto rb = evolve(pb);
  double d = 0.0;
  for (std::size_t i = 0; i < ra.snapshots.size(); ++i)
    d = std::max(d, sup_distance(ra.snapshots[i].state.psi, rb.snapshots[i].state.psi));
  return d;
}

}  // namespace detail

inline std::vector<RegimeRow> scenario_regime_compare(const std::vector<double>& mass_ratios,
                                                      const RegimeCompareSettings& s) {
  const Grid grid{s.n, s.length};
  grid.validate();
  double r_max = 0.0;
  for (double r : mass_ratios) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw InputError("mass ratios must be finite and >= 0");
    r_max = std::max(r_max, r);
  }
  // Band limit the packet well inside the stable window of the largest r.
  double k_cut = 0.5 * grid.wavenumber_step() * static_cast<double>(grid.n / 2);
  if (r_max > 0.0) {
    const auto crit = critical_wavenumber(EquationParameters{r_max, s.v, EquationForm::Full});
    if (!crit.all_unstable) k_cut = std::min(k_cut, 0.5 * crit.value);
  }
  const ComplexField profile = band_limited_packet(grid, s.sigma, s.noise, k_cut, s.seed);

  // Vanishing-start data: psi(0) = 0, psi_t(0) = 2 i g(x).
  const FieldState uniform{ComplexField(grid), ComplexField(grid, 2.0 * imag_unit)};
  const FieldState packet{ComplexField(grid), (2.0 * imag_unit) * profile};

  const CanonicalCoefficients macro = reduce_equation({1.0, s.v, EquationForm::Macroscopic});
  std::vector<RegimeRow> rows;
  for (double r : mass_ratios) {
    const CanonicalCoefficients full =
        r > 0.0 ? reduce_equation({r, s.v, EquationForm::Full}) : macro;
    RegimeRow row;
    row.r = r;
    row.distance_uniform =
        detail::sup_distance_between(full, macro, grid, uniform, s.horizon, s.safety, s.laplacian);
    row.distance_packet =
        detail::sup_distance_between(full, macro, grid, packet, s.horizon, s.safety, s.laplacian);
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// convergence: RK4 against the closed-form free solution.

struct ConvergenceRow {
  double dt = 0.0;
  double max_error = 0.0;
  double final_error = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double order = 0.0;
};

inline void check_halving(const std::vector<double>& dts) {
  if (dts.size() < 3) throw InputError("convergence study needs at least three time steps");
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0)) throw InputError("time steps must be positive");
    if (i > 0 && std::abs(dts[i] / dts[i - 1] - 0.5) > 1e-9)
      throw InputError("time steps must halve successively");
  }
}

/// Max error of psi over [0, horizon] for one step size.
inline ConvergenceRow free_solution_error(double dt, double horizon, double amplitude) {
  const auto spec = FreeSolutionSpec::vanishing_at_origin(amplitude);
  const auto traj = integrate(vanishing_initial_state(amplitude), UniformRhs{0.0}, horizon, dt, 1);
  ConvergenceRow row;
  row.dt = dt;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    row.max_error = std::max(row.max_error, std::abs(traj.states[i].psi - free_solution(spec, traj.times[i])));
  row.final_error = std::abs(traj.states.back().psi - free_solution(spec, traj.times.back()));
  return row;
}

inline ConvergenceResult scenario_convergence(const std::vector<double>& dts, double horizon = 100.0,
                                              double amplitude = 1.0) {
  check_halving(dts);
  ConvergenceResult out;
  std::vector<std::pair<double, double>> pts;
  for (double dt : dts) {
    out.rows.push_back(free_solution_error(dt, horizon, amplitude));
    pts.emplace_back(dt, out.rows.back().max_error);
  }
  out.order = convergence_order(pts);
  return out;
}

// ---------------------------------------------------------------------------
// pde_packet: Gaussian packet evolution with width diagnostics.

enum class PacketForm { Schrodinger, Full, Macroscopic };

struct PacketSettings {
  PacketForm form = PacketForm::Schrodinger;
  double r = 1.0;
  double v = 0.0;
  std::size_t n = 256;
  double length = 200.0;
  double sigma = 5.0;
  /// Default: the time at which the Schroedinger width doubles.
  double horizon = 2.0 * std::numbers::sqrt3 * 25.0;
  double dt = 0.0;
  double safety = 0.9;
  LaplacianKind laplacian = LaplacianKind::Spectral;
  int snapshots = 64;
  /// Project out modes above the critical wavenumber after every step.
  bool filter = true;
};

struct PacketSample {
  double t = 0.0;
  double width = 0.0;
  double width_law = 0.0;
  double l2 = 0.0;
  double max_abs = 0.0;
};

struct PacketResult {
  CanonicalCoefficients coeffs;
  double dt = 0.0;
  int stride = 1;
  std::optional<double> filter_cutoff;
  std::vector<PacketSample> samples;
  FieldState final_state;
};

inline CanonicalCoefficients packet_coefficients(const PacketSettings& s) {
  switch (s.form) {
    case PacketForm::Schrodinger: return {1.0, s.r, 0.0, s.v};
    case PacketForm::Full: return reduce_equation({s.r, s.v, EquationForm::Full});
    case PacketForm::Macroscopic: return reduce_equation({s.r, s.v, EquationForm::Macroscopic});
  }
  return {};
}

inline PacketResult scenario_pde_packet(const PacketSettings& s) {
  const Grid grid{s.n, s.length};
  grid.validate();
  if (s.snapshots < 1) throw InputError("snapshots must be >= 1");
  PacketResult out;
  out.coeffs = packet_coefficients(s);

  PdeProblem p;
  p.coeffs = out.coeffs;
  p.grid = grid;
  p.laplacian = s.laplacian;
  p.safety = s.safety;
  p.t_end = s.horizon;
  p.dt = s.dt > 0.0 ? s.dt : stability_dt(out.coeffs, grid, s.safety, s.laplacian).dt;
  const StepPlan plan = plan_steps(s.horizon, p.dt);
  p.snapshot_stride = std::max<int>(1, static_cast<int>(plan.total_steps() / s.snapshots));
  const auto crit = critical_wavenumber(out.coeffs);
  if (s.filter && !crit.all_unstable && std::isfinite(crit.value) &&
      stability_dt(out.coeffs, grid, s.safety, s.laplacian).has_unstable_modes)
    p.filter_cutoff = crit.value;
  p.spectral_diagnostics = true;
  p.initial = schrodinger_consistent_state(gaussian_packet(grid, 0.5 * grid.length, s.sigma),
                                           out.coeffs, s.laplacian);
  const auto sol = evolve(p);

  out.dt = sol.dt;
  out.stride = p.snapshot_stride;
  out.filter_cutoff = p.filter_cutoff;
  for (const auto& snap : sol.snapshots)
    out.samples.push_back({snap.t, packet_width(snap.state.psi, 0.5 * grid.length),
                           gaussian_width_law(s.sigma, out.coeffs.a_xx, snap.t), snap.l2, snap.max_abs});
  out.final_state = sol.snapshots.back().state;
  return out;
}

// ---------------------------------------------------------------------------
// Telegraph-term scaling: a_tt = eps against the a_tt = 0 reference.

struct TelegraphScalingSettings {
  double r = 1.0;
  double v = 0.0;
  std::size_t n = 256;
  double length = 200.0;
  double sigma = 5.0;
  double horizon = 20.0;
  /// Shared by every run so snapshots line up.
  double dt = 0.05;
  LaplacianKind laplacian = LaplacianKind::Spectral;
};

struct TelegraphScalingRow {
  double epsilon = 0.0;
  double deviation = 0.0;  // sup over time and space of |psi_eps - psi_0|
};

struct TelegraphScalingResult {
  std::vector<TelegraphScalingRow> rows;
  double order = 0.0;
};

inline TelegraphScalingResult telegraph_scaling_study(const std::vector<double>& epsilons,
                                                      const TelegraphScalingSettings& s = {}) {
  const Grid grid{s.n, s.length};
  grid.validate();
  const CanonicalCoefficients reference{1.0, s.r, 0.0, s.v};
  const FieldState initial =
      schrodinger_consistent_state(gaussian_packet(grid, 0.5 * grid.length, s.sigma), reference, s.laplacian);

  auto run = [&](const CanonicalCoefficients& c) {
    PdeProblem p;
    p.coeffs = c;
    p.grid = grid;
    p.initial = initial;
    p.t_end = s.horizon;
    p.dt = s.dt;
    p.laplacian = s.laplacian;
    const auto crit = critical_wavenumber(c);
    if (!crit.all_unstable && std::isfinite(crit.value) &&
        stability_dt(c, grid, 1.0, s.laplacian).has_unstable_modes)
      p.filter_cutoff = crit.value;
    return evolve(p);
  };

  const PdeSolution ref = run(reference);
  TelegraphScalingResult out;
  std::vector<std::pair<double, double>> pts;
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InputError("epsilon must be finite and positive");
    const PdeSolution sol = run({1.0, s.r, eps, s.v});
    double d = 0.0;
    for (std::size_t i = 0; i < sol.snapshots.size(); ++i)
      d = std::max(d, sup_distance(sol.snapshots[i].state.psi, ref.snapshots[i].state.psi));
    out.rows.push_back({eps, d});
    pts.emplace_back(eps, d);
  }
  out.order = convergence_order(pts);
  return out;
}

// ---------------------------------------------------------------------------
// report: Planck-scale numbers.

/// Shortest time resolution attainable with attosecond pulses, in seconds.
inline constexpr double attosecond_resolution = 1e-18;

struct PlanckReport {
  PhysicalConstants constants;
  DerivedScales scales;
  /// period / 1e-18 s
  double observability_ratio = 0.0;
};

inline PlanckReport report_planck_numbers(const PhysicalConstants& k = PhysicalConstants::codata2018()) {
  PlanckReport r;
  r.constants = k;
  r.scales = derive_scales(k);
  r.observability_ratio = r.scales.period / attosecond_resolution;
  return r;
}

}  // namespace nsb
