#include "shaketab/structure/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace shaketab::structure {

namespace {

void validate(double m1, double m2, double k1, double k2) {
  if (!(m1 > 0) || !(m2 > 0) || !(k1 > 0) || !(k2 > 0)) {
    throw std::invalid_argument("TwoDofFrame: masses and stiffnesses must be positive");
  }
}

}  // namespace

TwoDofFrame TwoDofFrame::from_dashpots(double m1, double m2, double k1,
                                       double k2, double c1, double c2) {
  validate(m1, m2, k1, k2);
  if (c1 < 0 || c2 < 0) {
    throw std::invalid_argument("TwoDofFrame: dashpot constants must be nonnegative");
  }
  TwoDofFrame f;
  f.m1 = m1; f.m2 = m2; f.k1 = k1; f.k2 = k2; f.c1 = c1; f.c2 = c2;
  return f;
}

TwoDofFrame TwoDofFrame::from_modal_ratios(double m1, double m2, double k1,
                                           double k2, double zeta1, double zeta2) {
  validate(m1, m2, k1, k2);
  if (zeta1 < 0 || zeta2 < 0) {
    throw std::invalid_argument("TwoDofFrame: damping ratios must be nonnegative");
  }
  TwoDofFrame f;
  f.m1 = m1; f.m2 = m2; f.k1 = k1; f.k2 = k2;
  f.rayleigh = true;
  const auto [w1, w2] = modal_frequencies(f);
  // a0*M + a1*K with zeta_i = (a0/w_i + a1*w_i)/2 at both modes
  const double det = w2 * w2 - w1 * w1;
  f.a0 = 2.0 * w1 * w2 * (zeta1 * w2 - zeta2 * w1) / det;
  f.a1 = 2.0 * (zeta2 * w2 - zeta1 * w1) / det;
  return f;
}

Eigen::Matrix2d TwoDofFrame::mass() const {
  return Eigen::Vector2d(m1, m2).asDiagonal();
}

Eigen::Matrix2d TwoDofFrame::stiffness() const {
  Eigen::Matrix2d k;
  k << k1 + k2, -k2, -k2, k2;
  return k;
}

Eigen::Matrix2d TwoDofFrame::damping() const {
  if (rayleigh) {
    return a0 * mass() + a1 * stiffness();
  }
  Eigen::Matrix2d c;
  c << c1 + c2, -c2, -c2, c2;
  return c;
}

StructureState initial_state(const TwoDofFrame& frame, double x1, double x2,
                             double v1, double v2, double base_accel) {
  StructureState s;
  s.x1 = x1; s.x2 = x2; s.v1 = v1; s.v2 = v2;
  const Eigen::Vector2d x(x1, x2), v(v1, v2);
  const Eigen::Vector2d p = -frame.mass() * Eigen::Vector2d::Ones() * base_accel;
  const Eigen::Vector2d a =
      frame.mass().ldlt().solve(p - frame.damping() * v - frame.stiffness() * x);
  s.a1_rel = a[0]; s.a2_rel = a[1];
  s.a1_abs = a[0] + base_accel;
  s.a2_abs = a[1] + base_accel;
  return s;
}

StructureState newmark_step(const TwoDofFrame& frame, const StructureState& state,
                            double base_accel, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("newmark_step: dt must be positive");
  const Eigen::Matrix2d m = frame.mass();
  const Eigen::Matrix2d c = frame.damping();
  const Eigen::Matrix2d k = frame.stiffness();
  const Eigen::Vector2d x(state.x1, state.x2);
  const Eigen::Vector2d v(state.v1, state.v2);
  const Eigen::Vector2d a(state.a1_rel, state.a2_rel);

  const Eigen::Vector2d p = -m * Eigen::Vector2d::Ones() * base_accel;
  const Eigen::Matrix2d k_eff = k + (2.0 / dt) * c + (4.0 / (dt * dt)) * m;
  const Eigen::Vector2d rhs =
      p + m * ((4.0 / (dt * dt)) * x + (4.0 / dt) * v + a) +
      c * ((2.0 / dt) * x + v);
  const Eigen::Vector2d x_new = k_eff.ldlt().solve(rhs);
  const Eigen::Vector2d a_new = (4.0 / (dt * dt)) * (x_new - x) - (4.0 / dt) * v - a;
  const Eigen::Vector2d v_new = v + (dt / 2.0) * (a + a_new);

  StructureState out;
  out.x1 = x_new[0]; out.x2 = x_new[1];
  out.v1 = v_new[0]; out.v2 = v_new[1];
  out.a1_rel = a_new[0]; out.a2_rel = a_new[1];
  out.a1_abs = a_new[0] + base_accel;
  out.a2_abs = a_new[1] + base_accel;
  return out;
}

std::pair<double, double> modal_frequencies(const TwoDofFrame& frame) {
  // det(K - w^2 M) = 0 reduces to m1 m2 L^2 - (m2(k1+k2) + m1 k2) L + k1 k2
  const double a = frame.m1 * frame.m2;
  const double b = -(frame.m2 * (frame.k1 + frame.k2) + frame.m1 * frame.k2);
  const double c = frame.k1 * frame.k2;
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  // stable quadratic roots
  const double q = -0.5 * (b - disc);  // b < 0 here
  const double l1 = c / q;
  const double l2 = q / a;
  return {std::sqrt(std::min(l1, l2)), std::sqrt(std::max(l1, l2))};
}

Eigen::Vector2d mode_shape(const TwoDofFrame& frame, int mode) {
  if (mode != 1 && mode != 2) {
    throw std::invalid_argument("mode_shape: mode must be 1 or 2");
  }
  const auto [w1, w2] = modal_frequencies(frame);
  const double l = (mode == 1 ? w1 * w1 : w2 * w2);
  // first row of (K - l M): (k1 + k2 - l m1) phi1 - k2 phi2 = 0
  return Eigen::Vector2d(frame.k2, frame.k1 + frame.k2 - l * frame.m1);
}

double inertial_feedback(const StructureState& state, const TwoDofFrame& frame) {
  return frame.m1 * state.a1_abs + frame.m2 * state.a2_abs;
}

double mechanical_energy(const TwoDofFrame& frame, const StructureState& state) {
  const Eigen::Vector2d x(state.x1, state.x2);
  const Eigen::Vector2d v(state.v1, state.v2);
  return 0.5 * v.dot(frame.mass() * v) + 0.5 * x.dot(frame.stiffness() * x);
}

}  // namespace shaketab::structure
