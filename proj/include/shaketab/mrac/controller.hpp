#pragma once

#include <array>

#include <Eigen/Dense>

#include "shaketab/lti/lyapunov.hpp"

namespace shaketab::mrac {

struct InvalidMass : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Table states [d_t, v_t] augmented with the scalar command channel x_c,
/// giving the 3-state system
///   X' = A X + B*Lambda*F + B*Wp^T*sigma_p + B_r*c(t)
/// with A assembled from the double-integrator table block, the zero
/// coupling row Ep and the command-channel scalar Er. Lambda = 1/m_t carries
/// the (possibly unknown) table mass; Wp the specimen mass ratios.
struct AugmentedSystem {
  Eigen::Matrix3d A;
  Eigen::Vector3d B;
  Eigen::Vector3d Br;
  double lambda{0};        // 1/m_t
  Eigen::Vector2d Wp;      // [-m1/m_t, -m2/m_t]
  Eigen::RowVector2d Ep;   // zero coupling row
  double Er{0};            // command-channel scalar

  static constexpr int n = 2;    // table states
  static constexpr int n_c = 1;  // command states
  static constexpr int m = 1;    // inputs
  static constexpr int a = n + n_c;
};

/// Assemble the augmented system for the given nominal table mass and
/// specimen masses. e_r is the command-channel scalar; the command channel
/// replicates the reference for any e_r (x_c = r solves the channel ODE
/// exactly) but is attracting only for e_r < 0.
AugmentedSystem build_augmented(double m_t_nominal, double m1 = 0.0,
                                double m2 = 0.0, double e_r = 1.0);

/// Feedback gain, closed reference matrix and Lyapunov certificate:
///   A_r = A - B K,   A_r^T P + P A_r = -I.
struct GainAndCertificate {
  Eigen::RowVector3d K;  // [K_p  K_r]
  Eigen::Matrix3d A_r;
  Eigen::Matrix3d P;
};

/// Design the reference model. The two table poles of the desired set are
/// assigned through K_p by Ackermann on the (controllable) table block; the
/// third eigenvalue of A_r is structurally the command-channel scalar aug.Er
/// (the force input cannot move it), so the desired pole closest to aug.Er
/// is matched to it and must equal it for an exact spectrum. K_r is fixed by
/// the unity-DC-tracking condition K_r = -K_p1.
GainAndCertificate design_reference(const AugmentedSystem& aug,
                                    const std::array<double, 3>& desired_poles);

/// c(t) = Er*r(t) - r'(t).
inline double command_signal(double r, double r_dot, double e_r) {
  return e_r * r - r_dot;
}

/// Input samples over one integration step at t, t+dt/2, t+dt.
struct StepSamples {
  double at_start{0};
  double at_mid{0};
  double at_end{0};
};

/// RK4 step of the reference model X_r' = A_r X_r + B_r c(t).
Eigen::Vector3d reference_step(const GainAndCertificate& gc,
                               const Eigen::Vector3d& b_r,
                               const Eigen::Vector3d& x_r,
                               const StepSamples& c, double dt);

/// Known regressor Phi = [sigma_p1, sigma_p2, -K X]^T; the third entry is
/// recomputed from the current state, never cached.
struct Regressor {
  Eigen::Vector3d phi;
};

Regressor build_regressor(const Eigen::Vector2d& sigma_p,
                          const Eigen::RowVector3d& k,
                          const Eigen::Vector3d& x);

/// Adaptive weight estimate and its learning rate.
struct AdaptiveState {
  Eigen::Vector3d w_hat{Eigen::Vector3d::Zero()};
  double gamma{1.0};
};

/// F = -W_hat^T Phi.
inline double control_force(const AdaptiveState& adaptive, const Regressor& phi) {
  return -adaptive.w_hat.dot(phi.phi);
}

/// Explicit Euler step of the adaptation law W_hat' = gamma * Phi * e^T P B.
AdaptiveState update_weights(const AdaptiveState& adaptive,
                             const Regressor& phi, const Eigen::Vector3d& e,
                             const Eigen::Matrix3d& p,
                             const Eigen::Vector3d& b, double dt);

/// Weights that satisfy the matching condition: with W_hat equal to these,
/// the closed loop collapses onto the reference model. Derived by equating
///   Lambda*F + Wp^T sigma_p = -K X  with  F = -W^T [sigma_p; -K X]:
/// W = [-m1, -m2, -m_t].
Eigen::Vector3d matching_weights(double m_t_true, double m1, double m2);

/// Lyapunov diagnostic V = e^T P e + gamma^{-1} tr[(Wt L^1/2)^T (Wt L^1/2)]
/// with Wt = W_hat - W_true; only computable in simulation where the true
/// weights are known.
double lyapunov_value(const Eigen::Vector3d& e, const Eigen::Matrix3d& p,
                      const Eigen::Vector3d& w_hat,
                      const Eigen::Vector3d& w_true, double lambda,
                      double gamma);

}  // namespace shaketab::mrac
