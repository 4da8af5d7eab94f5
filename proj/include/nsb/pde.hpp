#pragma once

// Method-of-lines solver for the pilot-wave equation on a periodic 1-D grid.
//
// The second time derivative is handled by evolving the pair
// (psi, psi_t). Spatial derivatives use either the three-point stencil or an
// exact spectral Laplacian; time stepping is the RK4 from integrator.hpp.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "nsb/analytic.hpp"
#include "nsb/errors.hpp"
#include "nsb/fft.hpp"
#include "nsb/integrator.hpp"

namespace nsb {

/// Periodic grid x_j = j * dx, j = 0..n-1, on [0, length).
struct Grid {
  std::size_t n = 256;
  double length = 2.0 * std::numbers::pi;

  double dx() const { return length / static_cast<double>(n); }
  double x(std::size_t j) const { return static_cast<double>(j) * dx(); }

  /// Wavenumber carried by DFT bin j.
  double wavenumber(std::size_t j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(signed_mode_index(j, n)) / length;
  }
  /// Spacing between resolvable wavenumbers.
  double wavenumber_step() const { return 2.0 * std::numbers::pi / length; }

  void validate() const {
    if (n < 8 || !std::has_single_bit(n)) throw InputError("grid size must be a power of two >= 8");
    if (!(length > 0.0) || !std::isfinite(length)) throw InputError("domain length must be positive");
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

struct ComplexField {
  Grid grid;
  std::vector<cplx> values;

  ComplexField() = default;
  explicit ComplexField(const Grid& g, cplx fill = {}) : grid(g), values(g.n, fill) {}
  ComplexField(const Grid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n) throw InputError("field length does not match grid");
  }

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t j) { return values[j]; }
  const cplx& operator[](std::size_t j) const { return values[j]; }

  ComplexField& operator+=(const ComplexField& o) {
    for (std::size_t j = 0; j < values.size(); ++j) values[j] += o.values[j];
    return *this;
  }
  ComplexField& operator*=(cplx s) {
    for (auto& x : values) x *= s;
    return *this;
  }
  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) {
    for (std::size_t j = 0; j < a.values.size(); ++j) a.values[j] -= b.values[j];
    return a;
  }
  friend ComplexField operator*(cplx s, ComplexField a) { return a *= s; }
  friend ComplexField operator*(double s, ComplexField a) { return a *= cplx(s, 0.0); }
};

inline bool is_finite(const ComplexField& f) {
  return std::all_of(f.values.begin(), f.values.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

/// sqrt(dx * sum |psi_j|^2)
inline double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const auto& z : f.values) s += std::norm(z);
  return std::sqrt(f.grid.dx() * s);
}

inline double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

/// Largest pointwise |a - b|.
inline double sup_distance(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

struct FieldState {
  ComplexField psi;
  ComplexField dpsi_dt;

  friend FieldState operator+(FieldState a, const FieldState& b) {
    a.psi += b.psi;
    a.dpsi_dt += b.dpsi_dt;
    return a;
  }
  friend FieldState operator*(double s, FieldState a) {
    a.psi *= cplx(s, 0.0);
    a.dpsi_dt *= cplx(s, 0.0);
    return a;
  }
  friend FieldState operator*(cplx s, FieldState a) {
    a.psi *= s;
    a.dpsi_dt *= s;
    return a;
  }
};

inline bool is_finite(const FieldState& s) { return is_finite(s.psi) && is_finite(s.dpsi_dt); }

/// Three-point periodic Laplacian (f[j-1] - 2 f[j] + f[j+1]) / dx^2.
inline ComplexField laplacian(const ComplexField& f) {
  const std::size_t n = f.size();
  const double inv_dx2 = 1.0 / (f.grid.dx() * f.grid.dx());
  ComplexField out(f.grid);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx& left = f[(j + n - 1) % n];
    const cplx& right = f[(j + 1) % n];
    out[j] = (left - 2.0 * f[j] + right) * inv_dx2;
  }
  return out;
}

enum class LaplacianKind { Stencil, Spectral };

constexpr std::string_view to_string(LaplacianKind k) {
  return k == LaplacianKind::Stencil ? "stencil" : "spectral";
}

/// Eigenvalue of the Laplacian for a Fourier mode of wavenumber k.
inline double laplacian_eigenvalue(LaplacianKind kind, double k, double dx) {
  if (kind == LaplacianKind::Spectral) return -k * k;
  return -(2.0 / (dx * dx)) * (1.0 - std::cos(k * dx));
}

/// Zeroes every Fourier mode with |k| > k_cut in both components.
class SpectralFilter {
 public:
  SpectralFilter(const Grid& grid, double k_cut) : grid_(grid), fft_(grid.n), keep_(grid.n) {
    if (!(k_cut >= 0.0)) throw InputError("filter cutoff must be non-negative");
    // Tolerance so that a cutoff placed exactly on a grid wavenumber keeps it.
    const double tol = 1e-12 * grid.wavenumber_step();
    for (std::size_t j = 0; j < grid.n; ++j) keep_[j] = std::abs(grid.wavenumber(j)) <= k_cut + tol;
  }

  void apply(ComplexField& f) const {
    std::vector<cplx> spec(grid_.n);
    fft_.forward(f.values, spec);
    for (std::size_t j = 0; j < grid_.n; ++j)
      if (!keep_[j]) spec[j] = 0.0;
    fft_.inverse(spec, f.values);
  }
  void apply(FieldState& s) const {
    apply(s.psi);
    apply(s.dpsi_dt);
  }
  void operator()(FieldState& s) const { apply(s); }

 private:
  Grid grid_;
  Fft fft_;
  std::vector<bool> keep_;
};

inline FieldState spectral_filter(FieldState state, double k_cut) {
  SpectralFilter(state.psi.grid, k_cut).apply(state);
  return state;
}

/// Discrete Laplacian of either kind. Owns the FFT plan used by the spectral one.
class LaplacianOperator {
 public:
  LaplacianOperator(const Grid& grid, LaplacianKind kind) : grid_(grid), kind_(kind) {
    grid.validate();
    if (kind == LaplacianKind::Spectral) {
      fft_ = std::make_unique<Fft>(grid.n);
      eig_.resize(grid.n);
      for (std::size_t j = 0; j < grid.n; ++j)
        eig_[j] = laplacian_eigenvalue(kind, grid.wavenumber(j), grid.dx());
    }
  }

  const Grid& grid() const { return grid_; }
  LaplacianKind kind() const { return kind_; }

  double eigenvalue(std::size_t j) const {
    return laplacian_eigenvalue(kind_, grid_.wavenumber(j), grid_.dx());
  }

  ComplexField apply(const ComplexField& f) const {
    if (kind_ == LaplacianKind::Stencil) return laplacian(f);
    std::vector<cplx> spec(grid_.n);
    fft_->forward(f.values, spec);
    for (std::size_t j = 0; j < grid_.n; ++j) spec[j] *= eig_[j];
    ComplexField out(grid_);
    fft_->inverse(spec, out.values);
    return out;
  }

 private:
  Grid grid_;
  LaplacianKind kind_;
  std::unique_ptr<Fft> fft_;
  std::vector<double> eig_;
};

/// Right-hand side for a_tt = 0: psi_t = (i / a_t) ((a_xx/2) lap psi - v psi).
inline ComplexField schrodinger_rate(const ComplexField& psi, const CanonicalCoefficients& c,
                                     const LaplacianOperator& lap) {
  ComplexField out = lap.apply(psi);
  const cplx scale = imag_unit / c.a_t;
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = scale * (0.5 * c.a_xx * out[j] - c.v * psi[j]);
  return out;
}

/// Time derivative of (psi, psi_t).
///
/// For a_tt != 0:  psi_tt = (2 (v psi - i a_t psi_t) - a_xx lap psi) / a_tt.
/// For a_tt == 0 the equation is first order; both components are advanced
/// by the same Schroedinger operator so psi_t stays equal to its rate.
inline FieldState rhs_field(const FieldState& s, const CanonicalCoefficients& c,
                            const LaplacianOperator& lap) {
  if (c.a_tt == 0.0)
    return {schrodinger_rate(s.psi, c, lap), schrodinger_rate(s.dpsi_dt, c, lap)};
  FieldState d{s.dpsi_dt, ComplexField(s.psi.grid)};
  const bool spatial = c.a_xx != 0.0;
  const ComplexField lap_psi = spatial ? lap.apply(s.psi) : ComplexField(s.psi.grid);
  const double inv_tt = 1.0 / c.a_tt;
  for (std::size_t j = 0; j < s.psi.size(); ++j) {
    cplx acc = 2.0 * (c.v * s.psi[j] - imag_unit * c.a_t * s.dpsi_dt[j]);
    if (spatial) acc -= c.a_xx * lap_psi[j];
    d.dpsi_dt[j] = acc * inv_tt;
  }
  return d;
}

/// Same right-hand side, but every term of the selected form is evaluated
/// separately and summed in the order it is written.
inline FieldState rhs_field_literal(const FieldState& s, const EquationParameters& p,
                                    const LaplacianOperator& lap) {
  const auto terms = literal_terms(p);
  const ComplexField lap_psi = lap.apply(s.psi);
  ComplexField sum(s.psi.grid);
  double tt = 0.0;
  for (const auto& term : terms) {
    tt += term.second_time;
    if (term.laplacian != 0.0) sum += term.laplacian * lap_psi;
    if (term.potential != 0.0) sum += (term.potential * p.v) * s.psi;
  }
  // i psi_t = sum + tt * psi_tt
  FieldState d{s.dpsi_dt, ComplexField(s.psi.grid)};
  for (std::size_t j = 0; j < s.psi.size(); ++j)
    d.dpsi_dt[j] = (imag_unit * s.dpsi_dt[j] - sum[j]) / tt;
  return d;
}

struct FieldRhs {
  CanonicalCoefficients coeffs;
  const LaplacianOperator* lap = nullptr;
  FieldState operator()(const FieldState& s) const { return rhs_field(s, coeffs, *lap); }
};

/// RK4 imaginary-axis stability bound used for all step-size rules.
inline constexpr double rk4_stability_radius = 2.8;

struct StabilityLimit {
  double dt = 0.0;
  double omega_max = 0.0;
  bool has_unstable_modes = false;
  bool all_unstable = false;
};

/// dt = safety * 2.8 / max_j |omega(k_j)| over both branches of every grid
/// mode, using the discrete Laplacian eigenvalue in place of k^2. Growing
/// modes contribute |Re omega| + |Im omega|.
inline StabilityLimit stability_dt(const CanonicalCoefficients& c, const Grid& grid,
                                   double safety = 0.9,
                                   LaplacianKind kind = LaplacianKind::Stencil) {
  grid.validate();
  if (!(safety > 0.0 && safety <= 1.0)) throw InputError("safety factor must be in (0, 1]");
  StabilityLimit out;
  auto magnitude = [](cplx w) {
    return w.imag() == 0.0 ? std::abs(w.real()) : std::abs(w.real()) + std::abs(w.imag());
  };
  std::size_t unstable = 0;
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double lambda = -laplacian_eigenvalue(kind, grid.wavenumber(j), grid.dx());
    const auto roots = branch_frequencies(c, lambda);
    double m = magnitude(roots.schrodinger);
    bool grows = roots.schrodinger.imag() > 0.0;
    if (roots.planck) {
      m = std::max(m, magnitude(*roots.planck));
      grows = grows || roots.planck->imag() > 0.0;
    }
    out.omega_max = std::max(out.omega_max, m);
    if (grows) ++unstable;
  }
  out.has_unstable_modes = unstable > 0;
  out.all_unstable = critical_wavenumber(c).all_unstable;
  out.dt = out.omega_max > 0.0 ? safety * rk4_stability_radius / out.omega_max
                               : std::numeric_limits<double>::infinity();
  return out;
}

struct Snapshot {
  double t = 0.0;
  FieldState state;
  double l2 = 0.0;
  double max_abs = 0.0;
};

struct PdeProblem {
  CanonicalCoefficients coeffs;
  Grid grid;
  FieldState initial;
  double t_end = 1.0;
  /// 0 selects the stability-limited step with `safety`.
  double dt = 0.0;
  double safety = 0.9;
  LaplacianKind laplacian = LaplacianKind::Stencil;
  int snapshot_stride = 1;
  /// When set, the initial data and the state after every step are
  /// projected onto |k| <= filter_cutoff.
  std::optional<double> filter_cutoff;
  /// Accept initial data with content above the critical wavenumber.
  bool allow_unstable_content = false;
  /// Report the dominant wavenumber when a blow-up is detected.
  bool spectral_diagnostics = false;
};

struct PdeSolution {
  std::vector<Snapshot> snapshots;
  double dt = 0.0;
};

/// Fraction of the spectral amplitude carried by modes with |k| > k_cut.
inline double spectral_content_above(const ComplexField& f, double k_cut) {
  Fft fft(f.size());
  std::vector<cplx> spec(f.size());
  fft.forward(f.values, spec);
  double total = 0.0, above = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double a = std::abs(spec[j]);
    total = std::max(total, a);
    if (std::abs(f.grid.wavenumber(j)) > k_cut) above = std::max(above, a);
  }
  return total > 0.0 ? above / total : 0.0;
}

inline double dominant_wavenumber(const ComplexField& f) {
  Fft fft(f.size());
  std::vector<cplx> spec(f.size());
  fft.forward(f.values, spec);
  std::size_t best = 0;
  for (std::size_t j = 1; j < f.size(); ++j)
    if (std::abs(spec[j]) > std::abs(spec[best])) best = j;
  return std::abs(f.grid.wavenumber(best));
}

/// Relative amplitude above the critical wavenumber tolerated without
/// `allow_unstable_content`.
inline constexpr double unstable_content_tolerance = 1e-8;

inline PdeSolution evolve(const PdeProblem& problem) {
  const Grid& grid = problem.grid;
  grid.validate();
  if (!(problem.initial.psi.grid == grid) || !(problem.initial.dpsi_dt.grid == grid))
    throw InputError("initial state does not live on the problem grid");
  if (problem.snapshot_stride < 1) throw InputError("snapshot stride must be >= 1");

  const StabilityLimit limit = stability_dt(problem.coeffs, grid, 1.0, problem.laplacian);
  const double dt = problem.dt > 0.0
                        ? problem.dt
                        : stability_dt(problem.coeffs, grid, problem.safety, problem.laplacian).dt;
  if (!std::isfinite(dt)) throw InputError("no finite stable time step; set dt explicitly");
  if (dt > limit.dt * (1.0 + 1e-12))
    throw InputError("time step exceeds the RK4 stability limit for this grid");

  std::optional<SpectralFilter> filter;
  if (problem.filter_cutoff) filter.emplace(grid, *problem.filter_cutoff);

  FieldState y = problem.initial;
  if (filter) filter->apply(y);

  if (!problem.allow_unstable_content) {
    const auto crit = critical_wavenumber(problem.coeffs);
    if (crit.all_unstable)
      throw InputError("every wavenumber is unstable for these coefficients");
    if (std::isfinite(crit.value) &&
        std::max(spectral_content_above(y.psi, crit.value),
                 spectral_content_above(y.dpsi_dt, crit.value)) > unstable_content_tolerance)
      throw InputError("initial data has content above the critical wavenumber");
  }

  const LaplacianOperator lap(grid, problem.laplacian);
  const FieldRhs rhs{problem.coeffs, &lap};
  const StepPlan plan = plan_steps(problem.t_end, dt);

  PdeSolution out;
  out.dt = dt;
  auto record = [&](double t, const FieldState& s) {
    out.snapshots.push_back({t, s, l2_norm(s.psi), max_abs(s.psi)});
  };
  record(0.0, y);

  const std::int64_t total = plan.total_steps();
  for (std::int64_t i = 0; i < total; ++i) {
    const bool partial = i == plan.full_steps;
    const double h = partial ? plan.last_dt : dt;
    const double t = static_cast<double>(i) * dt;
    try {
      FieldState next = rk4_step(y, rhs, h, t);
      if (filter) filter->apply(next);
      y = std::move(next);
    } catch (const BlowUpError& e) {
      if (problem.spectral_diagnostics) throw BlowUpError(e.time(), dominant_wavenumber(y.psi));
      throw;
    }
    const bool last = i + 1 == total;
    if ((i + 1) % problem.snapshot_stride == 0 || last)
      record(last ? problem.t_end : static_cast<double>(i + 1) * dt, y);
  }
  return out;
}

}  // namespace nsb
