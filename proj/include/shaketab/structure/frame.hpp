#pragma once

#include <utility>

#include <Eigen/Dense>

namespace shaketab::structure {

/// Two-story shear frame riding on the table: lumped masses m1 (lower) and
/// m2 (upper), story stiffnesses k1, k2 and story dashpots c1, c2. When
/// built from modal damping ratios the damping matrix is Rayleigh
/// (a0*M + a1*K) fitted at the two natural frequencies instead of the
/// dashpot assembly.
struct TwoDofFrame {
  double m1{0}, m2{0};
  double k1{0}, k2{0};
  double c1{0}, c2{0};
  bool rayleigh{false};
  double a0{0}, a1{0};

  static TwoDofFrame from_dashpots(double m1, double m2, double k1, double k2,
                                   double c1, double c2);
  static TwoDofFrame from_modal_ratios(double m1, double m2, double k1,
                                       double k2, double zeta1, double zeta2);

  Eigen::Matrix2d mass() const;
  Eigen::Matrix2d stiffness() const;
  Eigen::Matrix2d damping() const;
};

/// Story displacements/velocities relative to the table plus the absolute
/// floor accelerations of the last step. The relative accelerations ride
/// along as integrator state.
struct StructureState {
  double x1{0}, x2{0};
  double v1{0}, v2{0};
  double a1_abs{0}, a2_abs{0};
  double a1_rel{0}, a2_rel{0};
};

/// State with accelerations consistent with the equation of motion at the
/// given initial conditions and base acceleration.
StructureState initial_state(const TwoDofFrame& frame, double x1, double x2,
                             double v1, double v2, double base_accel);

/// Advance M x'' + C x' + K x = -M*iota*ag one step with the
/// average-acceleration Newmark scheme (gamma = 1/2, beta = 1/4); ag is the
/// table acceleration at the end of the step.
StructureState newmark_step(const TwoDofFrame& frame, const StructureState& state,
                            double base_accel, double dt);

/// Undamped natural frequencies (rad/s), smaller first, from the closed-form
/// quadratic in omega^2.
std::pair<double, double> modal_frequencies(const TwoDofFrame& frame);

/// Undamped mode shape for mode 1 or 2, unnormalized.
Eigen::Vector2d mode_shape(const TwoDofFrame& frame, int mode);

/// Specimen reaction m1*a1_abs + m2*a2_abs that enters the table force
/// balance.
double inertial_feedback(const StructureState& state, const TwoDofFrame& frame);

/// Total mechanical energy 1/2 v^T M v + 1/2 x^T K x of the relative motion.
double mechanical_energy(const TwoDofFrame& frame, const StructureState& state);

}  // namespace shaketab::structure
