#pragma once

#include "shaketab/lti/state_space.hpp"

namespace shaketab::lti {

/// One classical fourth-order Runge-Kutta step of x' = f(t, x).
/// State must support vector-space arithmetic (Eigen vectors, doubles).
template <typename State, typename Deriv>
State rk4_step(double t, double dt, const State& x, Deriv&& f) {
  const State k1 = f(t, x);
  const State k2 = f(t + 0.5 * dt, State(x + (0.5 * dt) * k1));
  const State k3 = f(t + 0.5 * dt, State(x + (0.5 * dt) * k2));
  const State k4 = f(t + dt, State(x + dt * k3));
  return State(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// RK4 step of x' = A x + B u(t) with the input sampled at t, t+dt/2, t+dt.
template <typename Scalar, typename Input>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> step_rk4(
    const StateSpace<Scalar>& ss,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, Input&& u, double t,
    double dt) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  return rk4_step(t, dt, x, [&](double tt, const Vec& xx) -> Vec {
    return ss.A * xx + ss.B * u(tt);
  });
}

}  // namespace shaketab::lti
