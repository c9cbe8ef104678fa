#include "shaketab/plant/tables.hpp"

#include <cmath>

#include "shaketab/lti/polynomial.hpp"
#include "shaketab/lti/rk4.hpp"
#include "shaketab/lti/table_models.hpp"

namespace shaketab::plant {

IdealTable ideal_step(const IdealTable& table, double force,
                      double specimen_feedback, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("ideal_step: dt must be positive");
  const double accel = ideal_acceleration(table, force, specimen_feedback);
  const Eigen::Vector2d x0(table.d_t, table.v_t);
  const Eigen::Vector2d x1 = lti::rk4_step(
      0.0, dt, x0, [accel](double, const Eigen::Vector2d& x) -> Eigen::Vector2d {
        return {x[1], accel};
      });
  IdealTable out = table;
  out.d_t = x1[0];
  out.v_t = x1[1];
  out.a_t = accel;
  return out;
}

double CommandShaper::step(double force, double m_t_nominal, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("CommandShaper::step: dt must be positive");
  if (!(m_t_nominal > 0)) {
    throw std::invalid_argument("CommandShaper::step: nominal mass must be positive");
  }
  const double u = force / m_t_nominal;
  const double leak = leak_;
  const Eigen::Vector2d x0(x1_, x2_);
  const Eigen::Vector2d x1 = lti::rk4_step(
      0.0, dt, x0, [u, leak](double, const Eigen::Vector2d& x) -> Eigen::Vector2d {
        return {-leak * x[0] + u, -leak * x[1] + x[0]};
      });
  x1_ = x1[0];
  x2_ = x1[1];
  return x2_;
}

IdentifiedTable::IdentifiedTable(double k_v, double filter_hz, double dt)
    : lp_(lti::butterworth2_discrete(filter_hz, dt)), k_v_(k_v), dt_(dt) {
  if (!(dt > 0) || dt > 1e-4 + 1e-12) {
    throw StepTooLarge("IdentifiedTable: the realization needs dt <= 1e-4 s");
  }
  ss_ = lti::to_state_space(lti::shake_table_displacement_tf());
  c_a_ = ss_.C * ss_.A;
  c_a2_ = c_a_ * ss_.A;
  x_ = Eigen::VectorXd::Zero(ss_.n());
}

void IdentifiedTable::step(double d_cmd, double dt) {
  if (std::abs(dt - dt_) > 1e-15) {
    throw StepTooLarge("IdentifiedTable::step: dt differs from the construction step");
  }
  voltage_ = lp_.step(k_v_ * (d_cmd - d_t_));
  const double v = voltage_;  // held over the step
  x_ = lti::step_rk4(ss_, x_, [v](double) { return v; }, 0.0, dt);
  d_t_ = (ss_.C * x_).value();
  v_t_ = (c_a_ * x_).value();
  a_t_ = (c_a2_ * x_).value();
}

std::vector<std::complex<double>> IdentifiedTable::inner_loop_poles(
    double k_v, double filter_hz) {
  const lti::TransferFunctiond g = lti::shake_table_displacement_tf();
  const lti::TransferFunctiond lp = lti::butterworth2_lowpass(filter_hz);
  // cancel the exact common origin factor shared by num and den before
  // closing the loop; what remains carries the single physical integrator
  lti::Polyd num = g.num.head(g.num.size() - 1);
  lti::Polyd den = g.den.head(g.den.size() - 1);
  lti::Polyd open_den = lti::poly_mul(den, lp.den);
  lti::Polyd open_num = lti::poly_mul(num, lp.num);
  lti::Polyd closed = open_den;
  const Eigen::Index off = closed.size() - open_num.size();
  for (Eigen::Index i = 0; i < open_num.size(); ++i) {
    closed[off + i] += k_v * open_num[i];
  }
  return lti::roots(closed);
}

}  // namespace shaketab::plant
