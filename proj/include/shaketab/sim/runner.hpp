#pragma once

#include <Eigen/Dense>

#include "shaketab/signals/at2.hpp"
#include "shaketab/sim/config.hpp"
#include "shaketab/sim/record.hpp"

namespace shaketab::sim {

struct NonFiniteState : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reference displacement trajectory and its rate on a half-step grid
/// (2*steps + 1 samples at dt/2), so RK4 stages see exact samples.
struct ReferenceTrajectory {
  double dt{0};  // full step
  std::size_t steps{0};
  std::vector<double> r_half;
  std::vector<double> r_dot_half;

  double r_at_step(std::size_t k) const { return r_half[2 * k]; }
};

/// Acceleration record -> displacement command: convert to m/s^2, resample
/// onto the half-step grid, low-pass with the conditioning Butterworth,
/// double-integrate (trapezoid), detrend linearly, differentiate for the
/// rate.
ReferenceTrajectory build_reference_trajectory(const signals::GroundMotion& gm,
                                               double dt, double filter_cutoff_hz,
                                               double scale,
                                               std::optional<double> duration);

/// Post-transient NRMSE of the table response against the reference-model
/// trajectory (the trajectory the closed loop is asked to follow), per
/// displacement, velocity, acceleration.
struct Summary {
  double nrmse_d{0}, nrmse_v{0}, nrmse_a{0};
  double skip_seconds{0};
};

/// Invariant bookkeeping gathered along the run.
struct Diagnostics {
  double v0{0}, v_end{0};
  double v_total_increase{0};
  double v_max_step_increase{0};
  double max_track_err{0};  // max ||X - X_r||
  double max_ref_norm{0};   // max ||X_r||
  double max_cmd_vs_r{0};   // max |X_r3 - r|: integrated channel vs its replica
  Eigen::Vector3d w_hat_end{Eigen::Vector3d::Zero()};
};

struct RunResult {
  SimulationRecord record;
  Summary summary;
  Diagnostics diag;
};

/// Execute one closed-loop scenario. Writes the record CSV when
/// cfg.output_path is set; prints the NRMSE summary to stdout unless the
/// log level is quiet.
RunResult run_simulate(const ScenarioConfig& cfg);

/// Same loop on an already-parsed record (the CLI path loads from
/// cfg.record_path).
RunResult run_simulate(const ScenarioConfig& cfg, const signals::GroundMotion& gm);

/// NRMSE of one named column across two record files.
double run_nrmse(const std::string& ref_csv, const std::string& meas_csv,
                 const std::string& column);

/// Magnitude/phase export of a named system on a log grid; returns CSV text
/// with columns omega_rad_s,mag,phase_rad.
std::string run_bode(const std::string& system_name, double omega_min,
                     double omega_max, int points);

}  // namespace shaketab::sim
