#pragma once

#include <Eigen/Dense>

#include "shaketab/lti/butterworth.hpp"
#include "shaketab/lti/state_space.hpp"

namespace shaketab::plant {

struct StepTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Force-driven rigid table: d_t'' = (F - specimen_feedback)/m_t.
struct IdealTable {
  double m_t{1.0};
  double d_t{0}, v_t{0};
  double a_t{0};  // acceleration consistent with the last applied force
};

/// Instantaneous table acceleration under force F and specimen reaction fb.
inline double ideal_acceleration(const IdealTable& table, double force,
                                 double specimen_feedback) {
  return (force - specimen_feedback) / table.m_t;
}

/// One RK4 step of the table under zero-order-hold force and specimen
/// feedback.
IdealTable ideal_step(const IdealTable& table, double force,
                      double specimen_feedback, double dt);

/// Bridge from the adaptive force output to the displacement command the
/// inner loop expects: F/m_nominal pushed through two cascaded leaky
/// integrators (pole 0.05 rad/s each). The leak bounds the command under
/// force bias yet is two decades below the earthquake band, so in-band
/// tracking is unaffected. A modeling choice of this artifact, not a plant
/// property.
class CommandShaper {
 public:
  explicit CommandShaper(double leak_rad_s = 0.05) : leak_(leak_rad_s) {}

  /// Advance one RK4 step; returns the displacement command at the end of
  /// the step.
  double step(double force, double m_t_nominal, double dt);

  double displacement() const { return x2_; }
  void reset() { x1_ = x2_ = 0; }

 private:
  double leak_;
  double x1_{0};  // leaky velocity
  double x2_{0};  // leaky displacement
};

/// The identified hydraulic table behind its inner displacement loop. The
/// realization is the canonical form of the voltage-to-displacement model;
/// with relative degree three, velocity and acceleration read from the same
/// state vector through C*A and C*A^2 (the first two Markov parameters
/// vanish, so no input feedthrough appears).
class IdentifiedTable {
 public:
  /// k_v: proportional gain of the inner displacement loop (V per m of
  /// error); filter_hz: cutoff of the conditioning low-pass on the valve
  /// command; dt: fixed step of the caller (<= 1e-4 s, the realization is
  /// stiff).
  IdentifiedTable(double k_v, double filter_hz, double dt);

  /// Advance one step under the commanded displacement. dt must match the
  /// construction step.
  void step(double d_cmd, double dt);

  double displacement() const { return d_t_; }
  double velocity() const { return v_t_; }
  double acceleration() const { return a_t_; }
  double valve_voltage() const { return voltage_; }

  /// Poles of the closed inner loop (proportional gain + low-pass around the
  /// voltage-to-displacement model), with the shared origin factor of the
  /// model cancelled.
  static std::vector<std::complex<double>> inner_loop_poles(double k_v,
                                                            double filter_hz);

 private:
  lti::StateSpaced ss_;
  Eigen::RowVectorXd c_a_, c_a2_;
  lti::DiscreteBiquad lp_;
  double k_v_;
  double dt_;
  Eigen::VectorXd x_;
  double d_t_{0}, v_t_{0}, a_t_{0};
  double voltage_{0};
};

}  // namespace shaketab::plant
