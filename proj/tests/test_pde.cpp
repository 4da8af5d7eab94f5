#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "generators.hpp"
#include "nsb/diagnostics.hpp"
#include "nsb/integrator.hpp"
#include "nsb/pde.hpp"
#include "nsb/scenarios.hpp"

using namespace nsb;

namespace {

constexpr double pi = std::numbers::pi;

CanonicalCoefficients full(double r, double v = 0.0) { return reduce_equation({r, v, EquationForm::Full}); }
CanonicalCoefficients macro(double v = 0.0) { return reduce_equation({1.0, v, EquationForm::Macroscopic}); }
CanonicalCoefficients schrodinger(double r, double v = 0.0) { return {1.0, r, 0.0, v}; }

double max_rel(const ComplexField& a, const ComplexField& b) {
  return sup_distance(a, b) / std::max(max_abs(b), 1e-300);
}

}  // namespace

// -- grid -------------------------------------------------------------------

TEST(Grid, Validation) {
  EXPECT_NO_THROW((Grid{8, 1.0}.validate()));
  EXPECT_THROW((Grid{4, 1.0}.validate()), InputError);
  EXPECT_THROW((Grid{100, 1.0}.validate()), InputError);
  EXPECT_THROW((Grid{64, 0.0}.validate()), InputError);
  EXPECT_THROW((Grid{64, -2.0}.validate()), InputError);
}

TEST(Grid, Wavenumbers) {
  const Grid g{8, 2 * pi};
  const double expected[] = {0, 1, 2, 3, 4, -3, -2, -1};  // Nyquist bin counted as +n/2
  for (std::size_t j = 0; j < 8; ++j) EXPECT_DOUBLE_EQ(g.wavenumber(j), expected[j]);
  EXPECT_DOUBLE_EQ(g.dx(), pi / 4);
}

TEST(ComplexField, LengthMustMatchGrid) {
  EXPECT_THROW(ComplexField(Grid{8, 1.0}, std::vector<cplx>(7)), InputError);
}

// -- laplacian --------------------------------------------------------------

TEST(Laplacian, ConstantFieldIsZero) {
  const Grid g{64, 10.0};
  const auto lap = laplacian(ComplexField(g, cplx(2.5, -1.0)));
  for (const auto& z : lap.values) EXPECT_EQ(z, cplx{});
}

TEST(Laplacian, SineMode) {
  const Grid g{256, 7.0};
  const double k = 2 * pi / g.length;
  ComplexField f(g);
  for (std::size_t j = 0; j < g.n; ++j) f[j] = std::sin(k * g.x(j));
  const auto lap = laplacian(f);
  ComplexField expected = (-k * k) * f;
  EXPECT_LT(max_rel(lap, expected), 1e-3);
}

TEST(Laplacian, FourierModeEigenvalue) {
  const Grid g{64, 13.0};
  for (long long m : {1LL, 5LL, 17LL, 32LL, -9LL}) {
    const double k = g.wavenumber_step() * static_cast<double>(m);
    const auto f = plane_wave(g, k);
    const double dx = g.dx();
    const double eig = -(2.0 / (dx * dx)) * (1.0 - std::cos(k * dx));
    EXPECT_LT(max_rel(laplacian(f), eig * f), 1e-12) << m;
    EXPECT_DOUBLE_EQ(laplacian_eigenvalue(LaplacianKind::Stencil, k, dx), eig);
  }
}

TEST(Laplacian, SpectralIsExactOnModes) {
  const Grid g{128, 40.0};
  const LaplacianOperator op(g, LaplacianKind::Spectral);
  for (long long m : {0LL, 1LL, 7LL, 63LL, -20LL}) {
    const double k = g.wavenumber_step() * static_cast<double>(m);
    const auto f = plane_wave(g, k, {0.5, 2.0});
    if (m == 0) EXPECT_LT(max_abs(op.apply(f)), 1e-13);
    else EXPECT_LT(max_rel(op.apply(f), (-k * k) * f), 1e-11) << m;
  }
}

TEST(Laplacian, OperatorStencilMatchesFreeFunction) {
  gen::Source src(31);
  const Grid g{32, 3.0};
  const auto f = src.field(g);
  const LaplacianOperator op(g, LaplacianKind::Stencil);
  EXPECT_EQ(op.apply(f).values, laplacian(f).values);
}

// -- rhs --------------------------------------------------------------------

TEST(RhsField, UniformStateReducesToOde) {
  gen::Source src(32);
  const Grid g{16, 5.0};
  for (auto kind : {LaplacianKind::Stencil, LaplacianKind::Spectral}) {
    const LaplacianOperator op(g, kind);
    for (int i = 0; i < 50; ++i) {
      const TemporalState u{src.complex(), src.complex()};
      const double v = src.uniform(-1, 1);
      const FieldState s{ComplexField(g, u.psi), ComplexField(g, u.dpsi_dt)};
      const auto d = rhs_field(s, full(src.log_uniform(-3, 1), v), op);
      const auto ref = rhs_uniform(u, v);
      for (std::size_t j = 0; j < g.n; ++j) {
        EXPECT_EQ(d.psi[j], ref.psi);
        EXPECT_LT(std::abs(d.dpsi_dt[j] - ref.dpsi_dt), 1e-14 * (1 + std::abs(ref.dpsi_dt)));
      }
    }
  }
}

TEST(RhsField, MacroscopicHasNoSpatialCoupling) {
  gen::Source src(33);
  const Grid g{32, 5.0};
  const LaplacianOperator op(g, LaplacianKind::Stencil);
  auto s = src.state(g);
  const auto before = rhs_field(s, macro(0.2), op);
  s.psi[7] += cplx(3.0, -1.0);
  s.dpsi_dt[7] += cplx(-2.0, 0.5);
  const auto after = rhs_field(s, macro(0.2), op);
  for (std::size_t j = 0; j < g.n; ++j) {
    if (j == 7) continue;
    EXPECT_EQ(after.psi[j], before.psi[j]);
    EXPECT_EQ(after.dpsi_dt[j], before.dpsi_dt[j]);
  }
}

TEST(RhsField, PointwiseFormula) {
  gen::Source src(34);
  const Grid g{16, 4.0};
  const LaplacianOperator op(g, LaplacianKind::Stencil);
  const auto s = src.state(g);
  const double r = 0.7, v = 0.1;
  const auto d = rhs_field(s, full(r, v), op);
  const auto lap = laplacian(s.psi);
  for (std::size_t j = 0; j < g.n; ++j) {
    const cplx expected = 2.0 * (v * s.psi[j] - imag_unit * s.dpsi_dt[j]) - r * lap[j];
    EXPECT_LT(std::abs(d.dpsi_dt[j] - expected), 1e-13);
  }
}

TEST(RhsField, LiteralAndReducedAgree) {
  gen::Source src(35);
  for (auto kind : {LaplacianKind::Stencil, LaplacianKind::Spectral}) {
    for (int i = 0; i < 100; ++i) {
      const Grid g{32, src.uniform(10.0, 100.0)};
      const LaplacianOperator op(g, kind);
      const auto s = src.state(g);
      const double v = src.uniform(-1, 1);
      for (auto [form, r] : {std::pair{EquationForm::Full, src.log_uniform(-2, 1)},
                             std::pair{EquationForm::Macroscopic, src.log_uniform(-4, -2)},
                             std::pair{EquationForm::Microscopic, src.log_uniform(2, 3)}}) {
        const EquationParameters p{r, v, form};
        const auto a = rhs_field_literal(s, p, op);
        const auto b = rhs_field(s, reduce_equation(p), op);
        const double scale = 1.0 + max_abs(b.dpsi_dt);
        EXPECT_LT(sup_distance(a.psi, b.psi), 1e-13);
        EXPECT_LT(sup_distance(a.dpsi_dt, b.dpsi_dt), 1e-13 * scale);
      }
    }
  }
}

TEST(RhsField, FirstOrderAdvancesBothComponents) {
  gen::Source src(36);
  const Grid g{32, 20.0};
  const LaplacianOperator op(g, LaplacianKind::Spectral);
  const auto c = schrodinger(1.0, 0.2);
  const auto psi = src.field(g);
  const auto d = rhs_field(schrodinger_consistent_state(psi, c, LaplacianKind::Spectral), c, op);
  const auto rate = schrodinger_rate(psi, c, op);
  EXPECT_LT(sup_distance(d.psi, rate), 1e-15);
  EXPECT_LT(sup_distance(d.dpsi_dt, schrodinger_rate(rate, c, op)), 1e-15);
}

// -- stability --------------------------------------------------------------

TEST(StabilityDt, MacroscopicFree) {
  for (double safety : {1.0, 0.9, 0.5})
    EXPECT_DOUBLE_EQ(stability_dt(macro(), Grid{64, 10.0}, safety).dt, 1.4 * safety);
}

TEST(StabilityDt, UniformLimitMatchesOde) {
  for (double v : {-1.0, 0.0, 0.3}) {
    const double lambda = 1.0 + std::sqrt(1.0 - 2.0 * v);
    EXPECT_DOUBLE_EQ(stability_dt(macro(v), Grid{64, 10.0}, 1.0).dt, 2.8 / lambda);
  }
}

TEST(StabilityDt, DecreasesUnderRefinement) {
  for (auto kind : {LaplacianKind::Stencil, LaplacianKind::Spectral}) {
    // Coarse grids are limited by the k = 0 fast mode alone; once modes beyond
    // k_crit are resolved the bound shrinks strictly.
    double prev = INFINITY;
    for (std::size_t n = 16; n <= 1024; n *= 2) {
      const double dt = stability_dt(full(1.0), Grid{n, 50.0}, 0.9, kind).dt;
      if (n >= 64) EXPECT_LT(dt, prev) << n;
      else EXPECT_LE(dt, prev) << n;
      prev = dt;
    }
  }
}

TEST(StabilityDt, ReportsUnstableModes) {
  const auto coarse = stability_dt(full(1.0), Grid{32, 200.0});  // dx > 2: every stencil mode below k_crit
  EXPECT_FALSE(coarse.has_unstable_modes);
  const auto fine = stability_dt(full(1.0), Grid{256, 50.0});
  EXPECT_TRUE(fine.has_unstable_modes);
  EXPECT_FALSE(fine.all_unstable);
  const auto all = stability_dt(full(1.0, 0.75), Grid{32, 50.0});
  EXPECT_TRUE(all.all_unstable);
  EXPECT_TRUE(std::isfinite(all.dt));
  EXPECT_GT(all.dt, 0.0);
}

TEST(StabilityDt, RejectsBadSafety) {
  EXPECT_THROW(stability_dt(macro(), Grid{}, 0.0), InputError);
  EXPECT_THROW(stability_dt(macro(), Grid{}, 1.5), InputError);
}

// -- spectral filter --------------------------------------------------------

TEST(SpectralFilter, BandLimitedUnchanged) {
  gen::Source src(37);
  const Grid g{128, 60.0};
  ComplexField f(g);
  for (long long m = -10; m <= 10; ++m) f += plane_wave(g, g.wavenumber_step() * m, src.complex());
  const FieldState s{f, 2.0 * f};
  const auto out = spectral_filter(s, 10.5 * g.wavenumber_step());
  EXPECT_LT(sup_distance(out.psi, s.psi), 1e-12);
  EXPECT_LT(sup_distance(out.dpsi_dt, s.dpsi_dt), 1e-12);
}

TEST(SpectralFilter, ZeroCutoffKeepsMean) {
  gen::Source src(38);
  const Grid g{64, 9.0};
  const auto s = src.state(g);
  const auto out = spectral_filter(s, 0.0);
  cplx mean{};
  for (const auto& z : s.psi.values) mean += z;
  mean /= static_cast<double>(g.n);
  for (const auto& z : out.psi.values) EXPECT_LT(std::abs(z - mean), 1e-14);
}

TEST(SpectralFilter, RemovesHighModes) {
  const Grid g{64, 2 * pi};
  const FieldState s{plane_wave(g, 3.0) + plane_wave(g, 9.0), ComplexField(g)};
  const auto out = spectral_filter(s, 5.0);
  EXPECT_LT(sup_distance(out.psi, plane_wave(g, 3.0)), 1e-14);
}

TEST(SpectralFilter, RejectsNegativeCutoff) {
  EXPECT_THROW(SpectralFilter(Grid{}, -1.0), InputError);
}

TEST(SpectralFilter, FilteredPacketStaysBounded) {
  // Grid whose resolved modes all lie below k_crit = 1.
  const Grid g{64, 200.0};
  const auto c = full(1.0);
  ASSERT_FALSE(stability_dt(c, g).has_unstable_modes);
  auto s = schrodinger_consistent_state(gaussian_packet(g, 100.0, 10.0), c, LaplacianKind::Stencil);
  s = spectral_filter(s, 0.5 * critical_wavenumber(c).value);
  PdeProblem p;
  p.coeffs = c;
  p.grid = g;
  p.initial = s;
  p.t_end = 10 * pi;  // ten periods of the fast branch
  const auto sol = evolve(p);
  const double m0 = sol.snapshots.front().max_abs;
  for (const auto& snap : sol.snapshots) EXPECT_LE(snap.max_abs, 1.01 * m0);
}

TEST(Evolve, FineGridGrowthIsReportedNotSilenced) {
  const Grid g{512, 100.0};
  const auto c = full(1.0);
  PdeProblem p;
  p.coeffs = c;
  p.grid = g;
  p.laplacian = LaplacianKind::Spectral;
  p.initial = schrodinger_consistent_state(gaussian_packet(g, 50.0, 5.0), c, LaplacianKind::Spectral);
  p.t_end = 10.0;
  p.snapshot_stride = 1000000;
  const auto sol = evolve(p);
  EXPECT_GT(sol.snapshots.back().max_abs, 1e3 * sol.snapshots.front().max_abs);

  p.filter_cutoff = critical_wavenumber(c).value;
  const auto filtered = evolve(p);
  EXPECT_LT(filtered.snapshots.back().max_abs, 1.01 * filtered.snapshots.front().max_abs);
}

// -- evolve -----------------------------------------------------------------

TEST(Evolve, UniformMacroscopicMatchesFreeSolution) {
  const Grid g{8, 10.0};
  PdeProblem p;
  p.coeffs = macro();
  p.grid = g;
  p.initial = {ComplexField(g), ComplexField(g, 2.0 * imag_unit)};
  p.t_end = 100.0;
  p.dt = 1e-3;
  p.snapshot_stride = 100000;
  const auto sol = evolve(p);
  ASSERT_EQ(sol.snapshots.back().t, 100.0);
  const cplx ref = free_solution(FreeSolutionSpec::vanishing_at_origin(1.0), 100.0);
  for (const auto& z : sol.snapshots.back().state.psi.values) EXPECT_LT(std::abs(z - ref), 1e-8);
}

TEST(Evolve, UniformFieldEqualsOde) {
  gen::Source src(39);
  for (int i = 0; i < 6; ++i) {
    const Grid g{8, src.uniform(1.0, 100.0)};
    const TemporalState u{src.complex(), src.complex()};
    const double v = src.uniform(-1, 0.45);
    const double dt = 0.01;
    for (auto c : {full(src.log_uniform(-2, 1), v), macro(v)}) {
      for (auto kind : {LaplacianKind::Stencil, LaplacianKind::Spectral}) {
        PdeProblem p;
        p.coeffs = c;
        p.grid = g;
        p.laplacian = kind;
        p.initial = {ComplexField(g, u.psi), ComplexField(g, u.dpsi_dt)};
        p.t_end = 20.0;
        p.dt = dt;
        p.snapshot_stride = 100;
        const auto sol = evolve(p);
        const auto tr = integrate(u, UniformRhs{v}, 20.0, dt, 100);
        ASSERT_EQ(sol.snapshots.size(), tr.states.size());
        for (std::size_t k = 0; k < tr.states.size(); ++k)
          for (const auto& z : sol.snapshots[k].state.psi.values)
            EXPECT_LT(std::abs(z - tr.states[k].psi), 1e-10);
      }
    }
  }
}

TEST(Evolve, SingleModeFrequencyMatchesSlowBranch) {
  // n=64 on L=64*pi: k = m/32, ten slow periods each.
  const Grid g{64, 64 * pi};
  for (long long m : {4LL, 8LL, 16LL}) {
    ModeRunSettings s;
    s.laplacian = LaplacianKind::Spectral;
    const auto meas = measure_mode(full(1.0), g, m, s);
    const double k = static_cast<double>(m) / 32.0;
    const double w = dispersion_roots({k, {1.0, 0.0, EquationForm::Full}}).schrodinger.real();
    EXPECT_LT(std::abs(meas.frequency - w) / w, 1e-4) << k;
    EXPECT_GE(meas.horizon * w / (2 * pi), 10.0 - 1e-9);
  }
}

TEST(Evolve, DiscreteDispersionForEveryResolvedMode) {
  const Grid g{32, 32 * pi};  // k_j = j/16
  for (double v : {0.0, 0.1}) {
    const auto c = full(1.0, v);
    for (std::size_t j = 1; j < g.n / 2; ++j) {
      const double lambda = -laplacian_eigenvalue(LaplacianKind::Stencil, g.wavenumber(j), g.dx());
      if (lambda + 2 * v >= 1.0) continue;
      ModeRunSettings s;
      s.laplacian = LaplacianKind::Stencil;
      const auto meas = measure_mode(c, g, static_cast<long long>(j), s);
      const double w = meas.omega_discrete.real();
      EXPECT_LT(std::abs(meas.frequency - w) / w, 1e-3) << "j=" << j << " v=" << v;
    }
  }
}

TEST(Evolve, StencilFrequencyErrorQuartersUnderRefinement) {
  const double k = 0.25;
  const double w = dispersion_roots({k, {1.0, 0.0, EquationForm::Full}}).schrodinger.real();
  ModeRunSettings s;
  s.laplacian = LaplacianKind::Stencil;
  const double e1 = std::abs(measure_mode(full(1.0), Grid{64, 32 * pi}, 4, s).frequency - w);
  const double e2 = std::abs(measure_mode(full(1.0), Grid{128, 32 * pi}, 4, s).frequency - w);
  EXPECT_NEAR(e1 / e2, 4.0, 0.3);
}

TEST(Evolve, GrowthAboveCriticalWavenumber) {
  for (double factor : {1.2, 1.5, 2.0}) {
    const double k = factor;  // k_crit = 1 for r = 1, v = 0
    const Grid g{64, 2 * pi * 8 / k};
    ModeRunSettings s;
    s.branch = Branch::Planck;
    const auto meas = measure_mode(full(1.0), g, 8, s);
    const double rate = dispersion_roots({k, {1.0, 0.0, EquationForm::Full}}).planck->imag();
    EXPECT_LT(std::abs(meas.growth_rate - rate) / rate, 0.02) << k;
  }
}

TEST(Evolve, GaussianSpreadingMatchesWidthLaw) {
  // The stencil needs the finer grid to bring its O(dx^2) dispersion error under 1e-3.
  for (auto [kind, n] : {std::pair{LaplacianKind::Spectral, 256}, std::pair{LaplacianKind::Stencil, 512}}) {
    PacketSettings s;
    s.laplacian = kind;
    s.n = static_cast<std::size_t>(n);
    const auto res = scenario_pde_packet(s);
    const auto& last = res.samples.back();
    EXPECT_NEAR(last.width_law, 2.0 * s.sigma, 1e-12);
    EXPECT_LT(std::abs(last.width - last.width_law) / last.width_law, 1e-3) << to_string(kind);
  }
}

TEST(Evolve, SchrodingerRunConservesNorm) {
  PacketSettings s;
  s.dt = 0.05;
  const auto res = scenario_pde_packet(s);
  const double l0 = res.samples.front().l2;
  for (const auto& smp : res.samples) EXPECT_LT(std::abs(smp.l2 - l0) / l0, 1e-8) << smp.t;
}

TEST(Evolve, TelegraphScalingIsFirstOrder) {
  const auto res = telegraph_scaling_study({1.0, 0.25, 0.0625});
  ASSERT_EQ(res.rows.size(), 3u);
  EXPECT_GT(res.rows[0].deviation, res.rows[1].deviation);
  EXPECT_GT(res.rows[1].deviation, res.rows[2].deviation);
  EXPECT_GE(res.order, 0.9);
}

TEST(Evolve, RejectsUnstableInitialContent) {
  const Grid g{64, 50.0};
  const auto c = full(1.0);
  PdeProblem p;
  p.coeffs = c;
  p.grid = g;
  p.initial = {plane_wave(g, g.wavenumber_step() * 20), ComplexField(g)};  // k ~ 2.5
  p.t_end = 1.0;
  EXPECT_THROW(evolve(p), InputError);
  p.allow_unstable_content = true;
  EXPECT_NO_THROW(evolve(p));
}

TEST(Evolve, RejectsAllUnstableWithoutOverride) {
  const Grid g{16, 10.0};
  PdeProblem p;
  p.coeffs = full(1.0, 0.75);
  p.grid = g;
  p.initial = {ComplexField(g, 1.0), ComplexField(g)};
  p.t_end = 1.0;
  EXPECT_THROW(evolve(p), InputError);
}

TEST(Evolve, RejectsStepAboveStabilityLimit) {
  const Grid g{16, 10.0};
  PdeProblem p;
  p.coeffs = macro();
  p.grid = g;
  p.initial = {ComplexField(g), ComplexField(g, 2.0 * imag_unit)};
  p.t_end = 10.0;
  p.dt = 1.5;
  EXPECT_THROW(evolve(p), InputError);
  p.dt = 1.4;
  EXPECT_NO_THROW(evolve(p));
}

TEST(Evolve, RejectsMismatchedGrid) {
  PdeProblem p;
  p.grid = Grid{16, 10.0};
  p.initial = {ComplexField(Grid{32, 10.0}), ComplexField(Grid{32, 10.0})};
  EXPECT_THROW(evolve(p), InputError);
}

TEST(Evolve, BlowUpReportsTimeAndMode) {
  const Grid g{512, 100.0};
  const auto c = full(1.0);
  PdeProblem p;
  p.coeffs = c;
  p.grid = g;
  p.laplacian = LaplacianKind::Spectral;
  p.initial = schrodinger_consistent_state(gaussian_packet(g, 50.0, 5.0), c, LaplacianKind::Spectral);
  p.t_end = 500.0;
  p.snapshot_stride = 1000000;
  p.spectral_diagnostics = true;
  try {
    evolve(p);
    FAIL() << "expected blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_GT(e.time(), 0.0);
    EXPECT_LT(e.time(), 500.0);
    ASSERT_TRUE(e.mode().has_value());
    EXPECT_GT(std::abs(*e.mode()), critical_wavenumber(c).value);
  }
}

TEST(Evolve, SnapshotsCarryDiagnostics) {
  const Grid g{32, 10.0};
  PdeProblem p;
  p.coeffs = macro();
  p.grid = g;
  p.initial = {ComplexField(g), ComplexField(g, 2.0 * imag_unit)};
  p.t_end = 1.0;
  p.dt = 0.01;
  p.snapshot_stride = 10;
  const auto sol = evolve(p);
  ASSERT_EQ(sol.snapshots.size(), 11u);
  for (const auto& s : sol.snapshots) {
    EXPECT_DOUBLE_EQ(s.l2, l2_norm(s.state.psi));
    EXPECT_DOUBLE_EQ(s.max_abs, max_abs(s.state.psi));
  }
  EXPECT_EQ(sol.snapshots.back().t, 1.0);
}

// -- diagnostics ------------------------------------------------------------

TEST(Diagnostics, ModeAmplitudeOfPlaneWave) {
  const Grid g{64, 30.0};
  const double k = 3 * g.wavenumber_step();
  const cplx a(0.4, -1.2);
  EXPECT_LT(std::abs(mode_amplitude(plane_wave(g, k, a), k) - a), 1e-14);
  EXPECT_LT(std::abs(mode_amplitude(plane_wave(g, k, a), 2 * k)), 1e-14);
}

TEST(Diagnostics, FrequencyAndGrowthFits) {
  std::vector<double> t;
  std::vector<cplx> a;
  for (int i = 0; i < 200; ++i) {
    t.push_back(0.1 * i);
    a.push_back(std::exp(cplx(0.3, -1.7) * t.back()));
  }
  EXPECT_NEAR(fit_frequency(t, a), 1.7, 1e-12);
  EXPECT_NEAR(fit_growth_rate(t, a), 0.3, 1e-12);
}

TEST(Diagnostics, PacketWidthOfGaussian) {
  const Grid g{512, 200.0};
  EXPECT_NEAR(packet_width(gaussian_packet(g, 100.0, 5.0), 100.0), 5.0, 1e-10);
  EXPECT_NEAR(packet_width(gaussian_packet(g, 3.0, 5.0), 3.0), 5.0, 1e-10);  // wraps around
  EXPECT_THROW(packet_width(ComplexField(g), 0.0), InputError);
}

TEST(Diagnostics, WidthLaw) {
  EXPECT_DOUBLE_EQ(gaussian_width_law(5.0, 1.0, 0.0), 5.0);
  EXPECT_DOUBLE_EQ(gaussian_width_law(5.0, 1.0, 2 * std::sqrt(3.0) * 25.0), 10.0);
  EXPECT_DOUBLE_EQ(gaussian_width_law(5.0, 0.0, 1e6), 5.0);
}
