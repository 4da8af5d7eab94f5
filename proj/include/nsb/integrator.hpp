#pragma once

// Fixed-step classical Runge-Kutta integration for first-order systems.
//
// The state type only needs `a + b`, `double * a` and a free function
// `is_finite(a)` found by ADL, which lets the same stepper drive the scalar
// uniform equation and the method-of-lines field system.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "nsb/analytic.hpp"
#include "nsb/errors.hpp"

namespace nsb {

/// (psi, dpsi/dt) for the spatially uniform equation.
struct TemporalState {
  cplx psi{};
  cplx dpsi_dt{};

  friend TemporalState operator+(const TemporalState& a, const TemporalState& b) {
    return {a.psi + b.psi, a.dpsi_dt + b.dpsi_dt};
  }
  friend TemporalState operator*(double s, const TemporalState& a) {
    return {s * a.psi, s * a.dpsi_dt};
  }
  friend TemporalState operator*(cplx s, const TemporalState& a) {
    return {s * a.psi, s * a.dpsi_dt};
  }
  friend bool operator==(const TemporalState&, const TemporalState&) = default;
};

inline bool is_finite(const TemporalState& s) {
  return std::isfinite(s.psi.real()) && std::isfinite(s.psi.imag()) &&
         std::isfinite(s.dpsi_dt.real()) && std::isfinite(s.dpsi_dt.imag());
}

/// psi(0) = 0 and dpsi/dt(0) = 2 i A: the uniform solution A (1 - exp(-2 i t)).
inline TemporalState vanishing_initial_state(cplx amplitude) {
  return {cplx{}, 2.0 * imag_unit * amplitude};
}

/// psi'' = 2 (v psi - i psi'), written as a first-order system.
inline TemporalState rhs_uniform(const TemporalState& s, double v) {
  return {s.dpsi_dt, 2.0 * (v * s.psi - imag_unit * s.dpsi_dt)};
}

struct UniformRhs {
  double v = 0.0;
  TemporalState operator()(const TemporalState& s) const { return rhs_uniform(s, v); }
};

/// One classical RK4 step of an autonomous system. `t` is only used to
/// timestamp a blow-up.
template <class State, class Rhs>
State rk4_step(const State& y, Rhs&& f, double dt, double t = 0.0) {
  if (!(dt > 0.0)) throw InputError("time step must be positive");
  const State k1 = f(y);
  const State k2 = f(y + (0.5 * dt) * k1);
  const State k3 = f(y + (0.5 * dt) * k2);
  const State k4 = f(y + dt * k3);
  State next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!is_finite(next)) throw BlowUpError(t + dt);
  return next;
}

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  int sample_stride = 1;
};

/// How [0, t_end] is cut into steps of `dt`: `full_steps` steps of dt,
/// then one shorter step when dt does not divide t_end.
struct StepPlan {
  std::int64_t full_steps = 0;
  double last_dt = 0.0;

  std::int64_t total_steps() const { return full_steps + (last_dt > 0.0 ? 1 : 0); }
};

inline StepPlan plan_steps(double t_end, double dt) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InputError("t_end must be finite and >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("time step must be positive");
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  StepPlan plan;
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    plan.full_steps = static_cast<std::int64_t>(nearest);
  } else {
    plan.full_steps = static_cast<std::int64_t>(std::floor(ratio));
    plan.last_dt = t_end - static_cast<double>(plan.full_steps) * dt;
  }
  return plan;
}

struct NoProjection {
  template <class State>
  void operator()(State&) const {}
};

/// Integrates from t = 0 to `t_end`, recording t = 0, every `sample_stride`-th
/// step and t_end. `project` is applied to the state after every step.
template <class State, class Rhs, class Projection = NoProjection>
Trajectory<State> integrate(const State& initial, Rhs&& rhs, double t_end, double dt,
                            int sample_stride = 1, Projection&& project = {}) {
  if (sample_stride < 1) throw InputError("sample stride must be >= 1");
  const StepPlan plan = plan_steps(t_end, dt);

  Trajectory<State> traj;
  traj.sample_stride = sample_stride;
  const auto expected = plan.total_steps() / sample_stride + 2;
  traj.times.reserve(static_cast<std::size_t>(expected));
  traj.states.reserve(static_cast<std::size_t>(expected));
  traj.times.push_back(0.0);
  traj.states.push_back(initial);

  State y = initial;
  for (std::int64_t i = 0; i < plan.full_steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    y = rk4_step(y, rhs, dt, t);
    project(y);
    const bool last = (i + 1 == plan.full_steps) && plan.last_dt == 0.0;
    if ((i + 1) % sample_stride == 0 || last) {
      traj.times.push_back(last ? t_end : static_cast<double>(i + 1) * dt);
      traj.states.push_back(y);
    }
  }
  if (plan.last_dt > 0.0) {
    y = rk4_step(y, rhs, plan.last_dt, static_cast<double>(plan.full_steps) * dt);
    project(y);
    traj.times.push_back(t_end);
    traj.states.push_back(y);
  }
  return traj;
}

/// Least-squares slope of log(error) against log(dt).
inline double convergence_order(std::span<const std::pair<double, double>> dt_error) {
  if (dt_error.size() < 3) throw InputError("convergence fit needs at least three points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [dt, err] : dt_error) {
    if (!(dt > 0.0)) throw InputError("time steps must be positive");
    if (!(err > 0.0) || !std::isfinite(err)) throw InputError("errors must be finite and positive");
    const double x = std::log(dt), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(dt_error.size());
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw InputError("time steps must not all be equal");
  return (n * sxy - sx * sy) / denom;
}

/// At least 50 steps per period of the fastest oscillation.
inline double default_time_step(double fastest_angular_frequency) {
  if (!(fastest_angular_frequency > 0.0)) throw InputError("frequency must be positive");
  return 2.0 * std::numbers::pi / (2.0 * fastest_angular_frequency) / 50.0;
}

}  // namespace nsb
