#include "shaketab/sim/runner.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "shaketab/log.hpp"
#include "shaketab/lti.hpp"
#include "shaketab/mrac/controller.hpp"
#include "shaketab/plant/tables.hpp"
#include "shaketab/signals/csv.hpp"
#include "shaketab/signals/time_series.hpp"
#include "shaketab/structure/frame.hpp"

namespace shaketab::sim {

namespace {

using Eigen::Vector3d;

structure::TwoDofFrame make_frame(const FrameConfig& f) {
  if (f.zeta1) {
    return structure::TwoDofFrame::from_modal_ratios(f.m1, f.m2, f.k1, f.k2,
                                                     *f.zeta1, *f.zeta2);
  }
  return structure::TwoDofFrame::from_dashpots(f.m1, f.m2, f.k1, f.k2,
                                               f.c1.value_or(0.0),
                                               f.c2.value_or(0.0));
}

/// Command-channel scalar: explicit override, otherwise the fastest real
/// reference pole.
double pick_command_pole(const ScenarioConfig& cfg) {
  if (cfg.e_r) return *cfg.e_r;
  double best = 0.0;
  for (double p : cfg.reference_poles) best = std::min(best, p);
  if (!(best < 0)) {
    throw ConfigError("config: no negative real reference pole for the command channel");
  }
  return best;
}

void check_finite(double t, std::initializer_list<double> vals) {
  for (double v : vals) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "simulation state became non-finite at t = " << t << " s";
      throw NonFiniteState(msg.str());
    }
  }
}

double windowed_nrmse(const std::vector<double>& ref,
                      const std::vector<double>& meas, std::size_t from) {
  std::vector<double> r(ref.begin() + static_cast<std::ptrdiff_t>(from), ref.end());
  std::vector<double> m(meas.begin() + static_cast<std::ptrdiff_t>(from), meas.end());
  return signals::nrmse(r, m);
}

}  // namespace

ReferenceTrajectory build_reference_trajectory(const signals::GroundMotion& gm,
                                               double dt, double filter_cutoff_hz,
                                               double scale,
                                               std::optional<double> duration) {
  const double dt_half = 0.5 * dt;
  signals::TimeSeries accel = signals::to_mps2(gm.accel);
  if (scale != 1.0) {
    for (double& v : accel.values) v *= scale;
  }
  const double span = duration.value_or(accel.duration());
  if (span > accel.duration() + 1e-12) {
    throw std::invalid_argument("reference trajectory: duration exceeds the record length");
  }
  signals::TimeSeries fine = signals::resample(accel, dt_half);

  lti::DiscreteBiquad lp = lti::butterworth2_discrete(filter_cutoff_hz, dt_half);
  for (double& v : fine.values) v = lp.step(v);

  signals::TimeSeries vel =
      signals::integrate_trapezoid(fine, signals::Unit::meters_per_s);
  signals::TimeSeries disp =
      signals::integrate_trapezoid(vel, signals::Unit::meters);
  disp = signals::detrend_linear(disp);
  signals::TimeSeries rate = signals::differentiate(disp);

  ReferenceTrajectory traj;
  traj.dt = dt;
  traj.steps = static_cast<std::size_t>(std::floor(span / dt + 1e-9));
  const std::size_t need = 2 * traj.steps + 1;
  if (disp.size() < need) {
    traj.steps = (disp.size() - 1) / 2;
  }
  traj.r_half.assign(disp.values.begin(),
                     disp.values.begin() + static_cast<std::ptrdiff_t>(2 * traj.steps + 1));
  traj.r_dot_half.assign(rate.values.begin(),
                         rate.values.begin() + static_cast<std::ptrdiff_t>(2 * traj.steps + 1));
  return traj;
}

RunResult run_simulate(const ScenarioConfig& cfg, const signals::GroundMotion& gm) {
  validate_config(cfg);

  const double dt = cfg.dt;
  const ReferenceTrajectory traj = build_reference_trajectory(
      gm, dt, cfg.filter_cutoff_hz, cfg.record_scale, cfg.duration);
  if (traj.steps == 0) {
    throw std::invalid_argument("run_simulate: record shorter than one step");
  }

  // controller design on the nominal model
  const double e_r = pick_command_pole(cfg);
  const double fm1 = cfg.frame ? cfg.frame->m1 : 0.0;
  const double fm2 = cfg.frame ? cfg.frame->m2 : 0.0;
  const mrac::AugmentedSystem aug =
      mrac::build_augmented(cfg.m_t_nominal, fm1, fm2, e_r);
  const mrac::GainAndCertificate gc = mrac::design_reference(aug, cfg.reference_poles);

  // true-plant quantities for the Lyapunov diagnostic
  const double lambda_true = 1.0 / cfg.m_t;
  const Vector3d w_true = mrac::matching_weights(cfg.m_t, fm1, fm2);

  mrac::AdaptiveState adaptive;
  adaptive.gamma = cfg.gamma;
  adaptive.w_hat = Vector3d(cfg.w_hat0[0], cfg.w_hat0[1], cfg.w_hat0[2]);

  // plant + specimen
  const bool ideal = cfg.plant == PlantKind::ideal;
  std::optional<structure::TwoDofFrame> frame;
  structure::StructureState specimen;
  if (cfg.frame) frame = make_frame(*cfg.frame);

  plant::IdealTable table;
  table.m_t = cfg.m_t;
  std::optional<plant::IdentifiedTable> hydro;
  plant::CommandShaper shaper;
  if (!ideal) hydro.emplace(cfg.inner_gain_kv, cfg.filter_cutoff_hz, dt);

  const double r0 = traj.r_half[0];
  Vector3d x(0.0, 0.0, r0);    // [d_t, v_t, x_c]
  Vector3d x_r(0.0, 0.0, r0);  // reference model state

  SimulationRecord rec;
  rec.reserve(traj.steps);
  std::vector<double> ref_d, ref_v, ref_a;
  ref_d.reserve(traj.steps);
  ref_v.reserve(traj.steps);
  ref_a.reserve(traj.steps);

  Diagnostics diag;
  double v_prev = 0.0;
  bool have_v_prev = false;
  double d_cmd = 0.0;

  for (std::size_t k = 0; k < traj.steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double r_k = traj.r_half[2 * k];
    const mrac::StepSamples c{
        mrac::command_signal(traj.r_half[2 * k], traj.r_dot_half[2 * k], e_r),
        mrac::command_signal(traj.r_half[2 * k + 1], traj.r_dot_half[2 * k + 1], e_r),
        mrac::command_signal(traj.r_half[2 * k + 2], traj.r_dot_half[2 * k + 2], e_r)};

    // regressor from the last specimen accelerations and the current state
    const Eigen::Vector2d sigma_p =
        frame ? Eigen::Vector2d(specimen.a1_abs, specimen.a2_abs)
              : Eigen::Vector2d::Zero();
    const mrac::Regressor phi_k = mrac::build_regressor(sigma_p, gc.K, x);
    const double force_k = mrac::control_force(adaptive, phi_k);
    const double fb_k = frame ? structure::inertial_feedback(specimen, *frame) : 0.0;

    // log the step-start row; the table acceleration is the algebraic
    // consequence of the current force and specimen reaction
    const Vector3d e_k = x - x_r;
    const double v_k = mrac::lyapunov_value(e_k, gc.P, adaptive.w_hat, w_true,
                                            lambda_true, adaptive.gamma);
    if (!have_v_prev) {
      diag.v0 = v_k;
      have_v_prev = true;
    } else if (v_k > v_prev) {
      diag.v_total_increase += v_k - v_prev;
      diag.v_max_step_increase = std::max(diag.v_max_step_increase, v_k - v_prev);
    }
    v_prev = v_k;
    const double a_log = ideal ? plant::ideal_acceleration(table, force_k, fb_k)
                               : hydro->acceleration();
    rec.t.push_back(t);
    rec.r.push_back(r_k);
    rec.dt_cmd.push_back(ideal ? 0.0 : d_cmd);
    rec.d_table.push_back(x[0]);
    rec.v_table.push_back(x[1]);
    rec.a_table.push_back(a_log);
    rec.d1.push_back(specimen.x1);
    rec.d2.push_back(specimen.x2);
    rec.a1_abs.push_back(specimen.a1_abs);
    rec.a2_abs.push_back(specimen.a2_abs);
    rec.F.push_back(force_k);
    rec.V_lyap.push_back(v_k);

    // reference model trajectory at the step start, for scoring
    ref_d.push_back(x_r[0]);
    ref_v.push_back(x_r[1]);
    ref_a.push_back((gc.A_r.row(1) * x_r).value());

    diag.max_track_err = std::max(diag.max_track_err, e_k.norm());
    diag.max_ref_norm = std::max(diag.max_ref_norm, x_r.norm());
    diag.max_cmd_vs_r = std::max(diag.max_cmd_vs_r, std::abs(x_r[2] - r_k));

    // advance the reference model
    const Vector3d x_r_next = mrac::reference_step(gc, aug.Br, x_r, c, dt);

    // advance the plant
    Vector3d x_next;
    double base_accel_next = 0.0;
    if (ideal) {
      // coupled closed-loop step: the force law is re-evaluated at the RK4
      // stages (specimen accelerations and weights held over the step)
      const auto closed = [&](double tt, const Vector3d& xs) -> Vector3d {
        const mrac::Regressor ph = mrac::build_regressor(sigma_p, gc.K, xs);
        const double f_val = mrac::control_force(adaptive, ph);
        const double ct =
            tt <= 0.0 ? c.at_start : (tt >= dt ? c.at_end : c.at_mid);
        return {xs[1], lambda_true * (f_val - fb_k), e_r * xs[2] - ct};
      };
      x_next = lti::rk4_step(0.0, dt, x, closed);
      {
        const mrac::Regressor ph = mrac::build_regressor(sigma_p, gc.K, x_next);
        const double f_end = mrac::control_force(adaptive, ph);
        base_accel_next = lambda_true * (f_end - fb_k);
      }
    } else {
      d_cmd = shaper.step(force_k, cfg.m_t_nominal, dt);
      double cmd = d_cmd;
      if (frame && cfg.csi_extension) {
        // disturbance port: specimen reaction injected as an equivalent
        // command offset (an extension beyond the identified bare-table fit)
        cmd -= cfg.csi_gain * fb_k / cfg.m_t_nominal;
      }
      hydro->step(cmd, dt);
      // command-channel state advances with the same channel dynamics
      const Vector3d x_cmd = lti::rk4_step(
          0.0, dt, x, [&](double tt, const Vector3d& xs) -> Vector3d {
            const double ct =
                tt <= 0.0 ? c.at_start : (tt >= dt ? c.at_end : c.at_mid);
            return {0.0, 0.0, e_r * xs[2] - ct};
          });
      x_next = Vector3d(hydro->displacement(), hydro->velocity(), x_cmd[2]);
      base_accel_next = hydro->acceleration();
    }

    // specimen under the fresh table acceleration (staggered, plant first)
    if (frame) {
      specimen = structure::newmark_step(*frame, specimen, base_accel_next, dt);
    }

    x = x_next;
    x_r = x_r_next;

    // adaptation on the post-step error
    if (!cfg.freeze_adaptation) {
      const Vector3d e_next = x - x_r;
      adaptive = mrac::update_weights(adaptive, phi_k, e_next, gc.P, aug.B, dt);
    }

    check_finite(t + dt, {x[0], x[1], x[2], x_r[0], x_r[1], x_r[2],
                          adaptive.w_hat[0], adaptive.w_hat[1], adaptive.w_hat[2]});
  }

  // final error/V bookkeeping at the end of the run
  {
    const Vector3d e_end = x - x_r;
    diag.max_track_err = std::max(diag.max_track_err, e_end.norm());
    diag.max_ref_norm = std::max(diag.max_ref_norm, x_r.norm());
    const double v_end = mrac::lyapunov_value(e_end, gc.P, adaptive.w_hat, w_true,
                                              lambda_true, adaptive.gamma);
    if (v_end > v_prev) {
      diag.v_total_increase += v_end - v_prev;
      diag.v_max_step_increase = std::max(diag.v_max_step_increase, v_end - v_prev);
    }
    diag.v_end = v_end;
    diag.w_hat_end = adaptive.w_hat;
  }

  RunResult result;
  result.diag = diag;
  result.summary.skip_seconds = cfg.nrmse_skip_seconds;
  std::size_t skip = static_cast<std::size_t>(
      std::floor(cfg.nrmse_skip_seconds / dt + 1e-9));
  if (skip >= rec.rows()) skip = 0;
  result.summary.nrmse_d = windowed_nrmse(ref_d, rec.d_table, skip);
  result.summary.nrmse_v = windowed_nrmse(ref_v, rec.v_table, skip);
  result.summary.nrmse_a = windowed_nrmse(ref_a, rec.a_table, skip);
  result.record = std::move(rec);

  if (!cfg.output_path.empty()) {
    signals::write_csv(result.record, cfg.output_path);
    log::debug("wrote " + std::to_string(result.record.rows()) + " rows to " +
               cfg.output_path);
  }
  if (log::level() >= log::Level::info) {
    std::printf(
        "NRMSE vs reference model (t > %g s): displacement %.6f, velocity %.6f, "
        "acceleration %.6f\n",
        result.summary.skip_seconds, result.summary.nrmse_d,
        result.summary.nrmse_v, result.summary.nrmse_a);
  }
  return result;
}

RunResult run_simulate(const ScenarioConfig& cfg) {
  validate_config(cfg);
  const signals::GroundMotion gm = signals::load_at2(cfg.record_path);
  return run_simulate(cfg, gm);
}

double run_nrmse(const std::string& ref_csv, const std::string& meas_csv,
                 const std::string& column) {
  const SimulationRecord ref = signals::read_csv(ref_csv);
  const SimulationRecord meas = signals::read_csv(meas_csv);
  const std::vector<double>* r = ref.column(column);
  const std::vector<double>* m = meas.column(column);
  if (r == nullptr || m == nullptr) {
    throw signals::SchemaMismatch("nrmse: unknown column '" + column + "'");
  }
  return signals::nrmse(*r, *m);
}

std::string run_bode(const std::string& system_name, double omega_min,
                     double omega_max, int points) {
  if (!(omega_min > 0) || !(omega_max > omega_min) || points < 2) {
    throw std::invalid_argument("bode: need 0 < omega_min < omega_max and points >= 2");
  }
  lti::TransferFunctiond tf = [&] {
    if (system_name == "vd") return lti::shake_table_displacement_tf();
    if (system_name == "va") return lti::shake_table_acceleration_tf();
    if (system_name == "butterworth") return lti::butterworth2_lowpass(50.0);
    throw UnknownSystem("bode: unknown system '" + system_name + "'");
  }();
  std::ostringstream out;
  if (system_name == "vd") {
    out << "# magnitude diverges as omega -> 0 (pole at the origin); grid starts at omega_min > 0\n";
  }
  out << "omega_rad_s,mag,phase_rad\n";
  const double lmin = std::log10(omega_min);
  const double lmax = std::log10(omega_max);
  char buf[128];
  for (int i = 0; i < points; ++i) {
    const double w = std::pow(
        10.0, lmin + (lmax - lmin) * static_cast<double>(i) / (points - 1));
    const std::complex<double> h = lti::freq_response(tf, w);
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", w, std::abs(h),
                  std::arg(h));
    out << buf;
  }
  return out.str();
}

}  // namespace shaketab::sim
