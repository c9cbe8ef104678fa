// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run through ctest or directly; thresholds are fixed in code.

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shaketab/lti.hpp"
#include "shaketab/mrac/controller.hpp"
#include "shaketab/signals/at2.hpp"
#include "shaketab/signals/csv.hpp"
#include "shaketab/sim/config.hpp"
#include "shaketab/sim/runner.hpp"
#include "shaketab/structure/frame.hpp"

#ifndef SHAKETAB_DATA_DIR
#define SHAKETAB_DATA_DIR "data"
#endif

using namespace shaketab;

namespace {

int g_failures = 0;

void criterion(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", idx,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

signals::GroundMotion sine_record() {
  const double dt = 0.005;
  const std::size_t n = static_cast<std::size_t>(22.0 / dt) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    g[i] = 2.0 / signals::kStandardGravity * std::sin(2.0 * std::numbers::pi * t);
  }
  signals::GroundMotion gm;
  gm.record_id = "sine1hz";
  gm.accel = signals::TimeSeries(dt, std::move(g), signals::Unit::g);
  gm.source_dt = dt;
  return gm;
}

sim::ScenarioConfig canonical_config() {
  sim::ScenarioConfig cfg;  // ideal bare table, m_t = m_nominal = 10, gamma = 4000
  cfg.record_path = "(in-memory sine)";
  cfg.duration = 20.0;
  return cfg;
}

void check_tf_identity() {
  const auto vd = lti::shake_table_displacement_tf();
  const auto va = lti::shake_table_acceleration_tf();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double w = std::pow(10.0, -1.0 + 4.0 * i / 49.0);
    const std::complex<double> jw{0.0, w};
    const std::complex<double> ha = lti::freq_response(va, w);
    const std::complex<double> hd = lti::freq_response(vd, w);
    worst = std::max(worst, std::abs(ha - jw * jw * hd) / std::abs(ha));
  }
  criterion(1, "voltage-to-acceleration equals s^2 times voltage-to-displacement",
            worst < 1e-9, fmt("max relative residual %.3e < 1e-9", worst));
}

void check_lyapunov_certificate() {
  const auto aug = mrac::build_augmented(10.0, 0.0, 0.0, -14.0);
  const auto gc = mrac::design_reference(aug, {-10.0, -12.0, -14.0});
  const Eigen::Matrix3d resid =
      gc.A_r.transpose() * gc.P + gc.P * gc.A_r + Eigen::Matrix3d::Identity();
  const double rel = resid.cwiseAbs().maxCoeff() / gc.P.cwiseAbs().maxCoeff();
  const bool chol = Eigen::LLT<Eigen::Matrix3d>(gc.P).info() == Eigen::Success;
  criterion(2, "lyapunov certificate for the default reference matrix",
            rel <= 1e-10 && chol,
            fmt("residual %.3e <= 1e-10 of ||P||, cholesky %s", rel,
                chol ? "ok" : "failed"));
}

void check_butterworth() {
  const auto h = lti::butterworth2_lowpass(50.0);
  const double at_dc = std::abs(lti::freq_response(h, 0.0));
  const double at_fc = std::abs(lti::freq_response(h, 2.0 * std::numbers::pi * 50.0));
  criterion(3, "conditioning filter gains at dc and cutoff",
            std::abs(at_dc - 1.0) <= 1e-12 && std::abs(at_fc - 0.70711) <= 1e-3,
            fmt("|H(0)| - 1 = %.2e, |H(j wc)| = %.6f", at_dc - 1.0, at_fc));
}

void check_lyapunov_decrease(const sim::RunResult& canonical) {
  const auto& d = canonical.diag;
  const bool pass = d.v_total_increase < 1e-3 * d.v0 && d.v_end < 0.01 * d.v0;
  criterion(4, "lyapunov diagnostic decreases along the canonical run", pass,
            fmt("total increase %.3e of V0, V(end)/V0 = %.3e", d.v_total_increase / d.v0,
                d.v_end / d.v0));
}

void check_unknown_mass(const sim::RunResult& doubled) {
  const bool pass =
      doubled.summary.nrmse_d <= 0.03 && doubled.summary.nrmse_v <= 0.06;
  criterion(5, "adaptive tracking with the true mass twice the nominal", pass,
            fmt("nrmse d=%.4f (<=0.03) v=%.4f (<=0.06)", doubled.summary.nrmse_d,
                doubled.summary.nrmse_v));
}

void check_matching(const signals::GroundMotion& gm) {
  auto cfg = canonical_config();
  cfg.duration = 10.0;
  cfg.freeze_adaptation = true;
  const Eigen::Vector3d w = mrac::matching_weights(cfg.m_t, 0.0, 0.0);
  cfg.w_hat0 = {w[0], w[1], w[2]};
  const auto res = sim::run_simulate(cfg, gm);
  const double rel = res.diag.max_track_err / res.diag.max_ref_norm;
  criterion(6, "frozen true weights collapse the loop onto the reference model",
            rel < 1e-8, fmt("max ||X - X_r|| = %.3e of max ||X_r||", rel));
}

void check_structure_oracle() {
  const auto gm = signals::load_at2(std::string(SHAKETAB_DATA_DIR) +
                                    "/records/synthetic_eq.at2");
  const auto frame = structure::TwoDofFrame::from_dashpots(5.0, 5.0, 600.0, 600.0,
                                                           1.5, 1.5);
  const double dt = 1e-4;
  const signals::TimeSeries ag = signals::resample(signals::to_mps2(gm.accel), dt);
  const std::size_t n = std::min<std::size_t>(ag.size(),
                                              static_cast<std::size_t>(10.0 / dt) + 1);

  // independent first-order RK4 on the same piecewise-linear forcing
  const Eigen::Matrix2d minv = frame.mass().inverse();
  const Eigen::Matrix2d cm = frame.damping();
  const Eigen::Matrix2d km = frame.stiffness();
  Eigen::Vector4d y = Eigen::Vector4d::Zero();
  structure::StructureState s;
  double max_diff = 0.0, max_resp = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a0 = ag.values[i];
    const double a1 = ag.values[i + 1];
    auto f = [&](double t, const Eigen::Vector4d& st) -> Eigen::Vector4d {
      const double w = t / dt;
      const double base = (1.0 - w) * a0 + w * a1;
      const Eigen::Vector2d x = st.head<2>();
      const Eigen::Vector2d v = st.tail<2>();
      const Eigen::Vector2d acc =
          minv * (-frame.mass() * Eigen::Vector2d::Ones() * base - cm * v - km * x);
      Eigen::Vector4d ds;
      ds << v, acc;
      return ds;
    };
    y = lti::rk4_step(0.0, dt, y, f);
    s = structure::newmark_step(frame, s, a1, dt);
    max_diff = std::max({max_diff, std::abs(s.x1 - y[0]), std::abs(s.x2 - y[1])});
    max_resp = std::max({max_resp, std::abs(y[0]), std::abs(y[1])});
  }
  const double rel = max_diff / max_resp;

  // undamped mode-1 free vibration, ten periods at T1/200
  const auto undamped =
      structure::TwoDofFrame::from_dashpots(5.0, 5.0, 600.0, 600.0, 0.0, 0.0);
  const auto [w1, w2] = structure::modal_frequencies(undamped);
  (void)w2;
  Eigen::Vector2d shape = structure::mode_shape(undamped, 1);
  shape *= 0.01 / shape[0];
  structure::StructureState u =
      structure::initial_state(undamped, shape[0], shape[1], 0.0, 0.0, 0.0);
  const double dte = (2.0 * std::numbers::pi / w1) / 200.0;
  const double e0 = structure::mechanical_energy(undamped, u);
  double drift = 0.0;
  for (int i = 0; i < 2000; ++i) {
    u = structure::newmark_step(undamped, u, 0.0, dte);
    drift = std::max(drift, std::abs(structure::mechanical_energy(undamped, u) - e0));
  }
  criterion(7, "newmark agrees with rk4 and conserves undamped energy",
            rel < 1e-4 && drift < 1e-3 * e0,
            fmt("disp discrepancy %.2e (<1e-4), energy drift %.2e of E0", rel,
                drift / e0));
}

void check_equilibrium(const signals::GroundMotion& gm) {
  auto cfg = canonical_config();
  cfg.duration = 10.0;
  cfg.frame = sim::FrameConfig{5.0, 5.0, 600.0, 600.0, 1.5, 1.5, {}, {}};
  const auto res = sim::run_simulate(cfg, gm);
  double max_f = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < res.record.rows(); ++i) {
    max_f = std::max(max_f, std::abs(res.record.F[i]));
  }
  for (std::size_t i = 0; i < res.record.rows(); ++i) {
    const double fb = 5.0 * res.record.a1_abs[i] + 5.0 * res.record.a2_abs[i];
    worst = std::max(worst, std::abs(res.record.F[i] -
                                     (cfg.m_t * res.record.a_table[i] + fb)));
  }
  criterion(8, "coupled ideal run balances actuator force against all inertia",
            worst < 1e-8 * max_f, fmt("max residual %.3e of max |F|", worst / max_f));
}

void check_determinism(const signals::GroundMotion& gm,
                       const sim::RunResult& doubled) {
  auto cfg = canonical_config();
  cfg.m_t = 2.0 * cfg.m_t_nominal;
  const auto again = sim::run_simulate(cfg, gm);
  const bool bytes_equal =
      signals::format_csv(again.record) == signals::format_csv(doubled.record);

  auto half = cfg;
  half.dt = 0.5 * cfg.dt;
  const auto fine = sim::run_simulate(half, gm);
  const double rel_change =
      std::abs(fine.summary.nrmse_d - doubled.summary.nrmse_d) /
      doubled.summary.nrmse_d;
  criterion(9, "byte-identical reruns and step-halving robustness",
            bytes_equal && rel_change < 0.05,
            fmt("csv bytes %s, nrmse change %.3f%% (<5%%)",
                bytes_equal ? "identical" : "DIFFER", 100.0 * rel_change));
}

void check_nrmse_fixtures() {
  using signals::TimeSeries;
  using signals::Unit;
  const TimeSeries x(0.1, {1.0, 2.0, 3.0}, Unit::meters);
  const double a = signals::nrmse(x, x);
  const TimeSeries r(0.1, {2.0, 0.0}, Unit::meters);
  const TimeSeries m(0.1, {0.0, 0.0}, Unit::meters);
  const double b = signals::nrmse(r, m);
  const TimeSeries ones(0.1, {1.0, 1.0, 1.0, 1.0}, Unit::meters);
  const TimeSeries zeros(0.1, {0.0, 0.0, 0.0, 0.0}, Unit::meters);
  const double c = signals::nrmse(ones, zeros);
  const bool pass = a == 0.0 && std::abs(b - std::sqrt(2.0) / 2.0) <= 1e-12 &&
                    std::abs(c - 1.0) <= 1e-12;
  criterion(10, "nrmse fixture triple", pass,
            fmt("0 -> %.1e, 0.70711 -> %.12f, 1.0 -> %.12f", a, b, c));
}

}  // namespace

int main() {
  try {
    const signals::GroundMotion gm = sine_record();

    check_tf_identity();
    check_lyapunov_certificate();
    check_butterworth();

    const auto canonical = sim::run_simulate(canonical_config(), gm);
    check_lyapunov_decrease(canonical);

    auto doubled_cfg = canonical_config();
    doubled_cfg.m_t = 2.0 * doubled_cfg.m_t_nominal;
    const auto doubled = sim::run_simulate(doubled_cfg, gm);
    check_unknown_mass(doubled);

    check_matching(gm);
    check_structure_oracle();
    check_equilibrium(gm);
    check_determinism(gm, doubled);
    check_nrmse_fixtures();
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
