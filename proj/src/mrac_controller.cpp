#include "shaketab/mrac/controller.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "shaketab/lti/pole_placement.hpp"
#include "shaketab/lti/rk4.hpp"

namespace shaketab::mrac {

AugmentedSystem build_augmented(double m_t_nominal, double m1, double m2,
                                double e_r) {
  if (!(m_t_nominal > 0)) {
    throw InvalidMass("build_augmented: table mass must be positive");
  }
  if (m1 < 0 || m2 < 0) {
    throw InvalidMass("build_augmented: specimen masses must be nonnegative");
  }
  AugmentedSystem aug;
  aug.lambda = 1.0 / m_t_nominal;
  aug.Wp = Eigen::Vector2d(-m1 / m_t_nominal, -m2 / m_t_nominal);
  aug.Ep = Eigen::RowVector2d::Zero();
  aug.Er = e_r;
  aug.A.setZero();
  aug.A(0, 1) = 1.0;             // table block [[0,1],[0,0]]
  aug.A(2, 0) = aug.Ep[0];
  aug.A(2, 1) = aug.Ep[1];
  aug.A(2, 2) = e_r;
  aug.B = Eigen::Vector3d(0.0, 1.0, 0.0);
  aug.Br = Eigen::Vector3d(0.0, 0.0, -1.0);
  return aug;
}

GainAndCertificate design_reference(const AugmentedSystem& aug,
                                    const std::array<double, 3>& desired_poles) {
  for (double p : desired_poles) {
    if (!(p < 0)) {
      throw lti::NotHurwitz("design_reference: desired poles must lie strictly in the left half-plane");
    }
  }
  if (!(aug.Er < 0)) {
    throw lti::NotHurwitz(
        "design_reference: the command-channel scalar is an immovable eigenvalue of "
        "A_r (the force input does not reach it); it must be negative");
  }
  // the desired pole closest to Er rides on the command channel; the other
  // two are assigned on the table block
  int channel = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(desired_poles[i] - aug.Er) <
        std::abs(desired_poles[channel] - aug.Er)) {
      channel = i;
    }
  }
  std::vector<std::complex<double>> table_poles;
  for (int i = 0; i < 3; ++i) {
    if (i != channel) table_poles.emplace_back(desired_poles[i], 0.0);
  }
  const Eigen::MatrixXd a_p = aug.A.topLeftCorner<2, 2>();
  const Eigen::VectorXd b_p = aug.B.head<2>();
  const Eigen::RowVectorXd k_p = lti::place_poles(a_p, b_p, table_poles);

  GainAndCertificate gc;
  gc.K << k_p[0], k_p[1], -k_p[0];  // K_r = -K_p1: unity DC gain from r
  gc.A_r = aug.A - aug.B * gc.K;
  gc.P = lti::solve_lyapunov(gc.A_r);
  return gc;
}

Eigen::Vector3d reference_step(const GainAndCertificate& gc,
                               const Eigen::Vector3d& b_r,
                               const Eigen::Vector3d& x_r,
                               const StepSamples& c, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("reference_step: dt must be positive");
  return lti::rk4_step(
      0.0, dt, x_r, [&](double t, const Eigen::Vector3d& x) -> Eigen::Vector3d {
        const double ct = t <= 0.0 ? c.at_start : (t >= dt ? c.at_end : c.at_mid);
        return gc.A_r * x + b_r * ct;
      });
}

Regressor build_regressor(const Eigen::Vector2d& sigma_p,
                          const Eigen::RowVector3d& k,
                          const Eigen::Vector3d& x) {
  Regressor reg;
  reg.phi << sigma_p[0], sigma_p[1], -k.dot(x);
  return reg;
}

AdaptiveState update_weights(const AdaptiveState& adaptive,
                             const Regressor& phi, const Eigen::Vector3d& e,
                             const Eigen::Matrix3d& p,
                             const Eigen::Vector3d& b, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("update_weights: dt must be positive");
  AdaptiveState out = adaptive;
  const double epb = e.dot(p * b);
  out.w_hat += (dt * adaptive.gamma * epb) * phi.phi;
  return out;
}

Eigen::Vector3d matching_weights(double m_t_true, double m1, double m2) {
  return Eigen::Vector3d(-m1, -m2, -m_t_true);
}

double lyapunov_value(const Eigen::Vector3d& e, const Eigen::Matrix3d& p,
                      const Eigen::Vector3d& w_hat,
                      const Eigen::Vector3d& w_true, double lambda,
                      double gamma) {
  const Eigen::Vector3d w_tilde = w_hat - w_true;
  return e.dot(p * e) + (lambda / gamma) * w_tilde.squaredNorm();
}

}  // namespace shaketab::mrac
