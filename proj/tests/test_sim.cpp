#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "shaketab/signals/at2.hpp"
#include "shaketab/signals/csv.hpp"
#include "shaketab/sim/config.hpp"
#include "shaketab/sim/runner.hpp"

using namespace shaketab;

namespace {

// 1 Hz sine acceleration record in PEER layout, peak accel in m/s^2
signals::GroundMotion sine_record(double peak_mps2, double seconds, double dt) {
  const std::size_t n = static_cast<std::size_t>(seconds / dt) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    g[i] = peak_mps2 / signals::kStandardGravity *
           std::sin(2.0 * std::numbers::pi * t);
  }
  signals::GroundMotion gm;
  gm.record_id = "sine1hz";
  gm.accel = signals::TimeSeries(dt, std::move(g), signals::Unit::g);
  gm.source_dt = dt;
  return gm;
}

sim::ScenarioConfig canonical_config() {
  sim::ScenarioConfig cfg;
  cfg.record_path = "(in-memory)";
  cfg.duration = 20.0;
  return cfg;  // all other defaults: ideal bare table, m_t = 10, gamma = 4000
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("config parsing and round trip") {
  const std::string text =
      "# demo scenario\n"
      "record_path = data/records/synth.at2\n"
      "plant = ideal\n"
      "m_t = 20 # true mass, twice nominal\n"
      "m_t_nominal = 10\n"
      "gamma = 4000\n"
      "reference_poles = -10, -12, -14\n"
      "dt = 1e-4\n"
      "duration = 20\n"
      "output_path = out.csv\n";
  const auto cfg = sim::parse_config(text);
  CHECK(cfg.m_t == 20.0);
  CHECK(cfg.m_t_nominal == 10.0);
  CHECK(cfg.reference_poles[2] == -14.0);
  CHECK(cfg.duration == 20.0);
  CHECK(!cfg.frame.has_value());

  const auto back = sim::parse_config(sim::serialize_config(cfg));
  CHECK(sim::serialize_config(back) == sim::serialize_config(cfg));

  SUBCASE("frame keys and damping exclusivity") {
    auto with_frame = text +
                      "m1 = 5\nm2 = 5\nk1 = 600\nk2 = 600\nzeta1 = 0.02\nzeta2 = 0.02\n";
    const auto fcfg = sim::parse_config(with_frame);
    REQUIRE(fcfg.frame.has_value());
    CHECK(fcfg.frame->zeta1 == 0.02);
    const auto round = sim::parse_config(sim::serialize_config(fcfg));
    CHECK(sim::serialize_config(round) == sim::serialize_config(fcfg));

    CHECK_THROWS_AS((void)sim::parse_config(with_frame + "c1 = 1\nc2 = 1\n"),
                    sim::ConfigError);
  }

  SUBCASE("rejects unknown keys and malformed lines") {
    CHECK_THROWS_AS((void)sim::parse_config("not a key value line\n"),
                    sim::ConfigError);
    CHECK_THROWS_AS((void)sim::parse_config("mystery_knob = 7\n"), sim::ConfigError);
    CHECK_THROWS_AS((void)sim::parse_config("dt = fast\n"), sim::ConfigError);
  }

  SUBCASE("structural validation") {
    auto cfg2 = cfg;
    cfg2.reference_poles = {-10.0, 0.5, -14.0};
    CHECK_THROWS_AS(sim::validate_config(cfg2), sim::ConfigError);

    auto cfg3 = cfg;
    cfg3.frame = sim::FrameConfig{5.0, 5.0, 600.0, 600.0, 1.0, 1.0, {}, {}};
    cfg3.plant = sim::PlantKind::identified;
    CHECK_THROWS_AS(sim::validate_config(cfg3), sim::ConfigError);
    cfg3.csi_extension = true;
    CHECK_NOTHROW(sim::validate_config(cfg3));
  }
}

TEST_CASE("bare-table adaptive run tracks the reference model") {
  const auto gm = sine_record(2.0, 22.0, 0.005);
  auto cfg = canonical_config();
  const auto res = sim::run_simulate(cfg, gm);

  CHECK(res.record.rows() == 200000);
  CHECK(res.summary.nrmse_d <= 0.02);
  CHECK(res.summary.nrmse_v <= 0.04);
  // weight estimate heads for the true mass weights [0, 0, -m_t]
  CHECK(res.diag.w_hat_end[2] == doctest::Approx(-10.0).epsilon(0.02));
  // integrated command channel rides on the reference sample
  CHECK(res.diag.max_cmd_vs_r < 1e-6);
}

TEST_CASE("unknown mass twice the nominal still converges") {
  const auto gm = sine_record(2.0, 22.0, 0.005);
  auto cfg = canonical_config();
  cfg.m_t = 2.0 * cfg.m_t_nominal;
  const auto res = sim::run_simulate(cfg, gm);
  CHECK(res.summary.nrmse_d <= 0.03);
  CHECK(res.summary.nrmse_v <= 0.06);
  CHECK(res.diag.w_hat_end[2] == doctest::Approx(-20.0).epsilon(0.05));
}

TEST_CASE("ideal coupled run honours the force balance row by row") {
  const auto gm = sine_record(2.0, 12.0, 0.005);
  auto cfg = canonical_config();
  cfg.duration = 10.0;
  cfg.frame = sim::FrameConfig{5.0, 5.0, 600.0, 600.0, 1.5, 1.5, {}, {}};
  const auto res = sim::run_simulate(cfg, gm);

  double max_f = 0.0;
  for (double f : res.record.F) max_f = std::max(max_f, std::abs(f));
  REQUIRE(max_f > 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < res.record.rows(); ++i) {
    const double fb = 5.0 * res.record.a1_abs[i] + 5.0 * res.record.a2_abs[i];
    const double resid =
        res.record.F[i] - (cfg.m_t * res.record.a_table[i] + fb);
    worst = std::max(worst, std::abs(resid));
  }
  CHECK(worst < 1e-8 * max_f);
}

TEST_CASE("determinism and step-size robustness") {
  const auto gm = sine_record(2.0, 22.0, 0.005);
  auto cfg = canonical_config();
  cfg.m_t = 20.0;

  const auto a = sim::run_simulate(cfg, gm);
  const auto b = sim::run_simulate(cfg, gm);
  CHECK(signals::format_csv(a.record) == signals::format_csv(b.record));

  auto half = cfg;
  half.dt = 0.5 * cfg.dt;
  const auto c = sim::run_simulate(half, gm);
  CHECK(std::abs(c.summary.nrmse_d - a.summary.nrmse_d) <
        0.05 * a.summary.nrmse_d);
}

TEST_CASE("zero-amplitude record surfaces the undefined normalization") {
  const std::size_t n = 2001;
  signals::GroundMotion gm;
  gm.accel = signals::TimeSeries(0.005, std::vector<double>(n, 0.0), signals::Unit::g);
  gm.source_dt = 0.005;
  auto cfg = canonical_config();
  cfg.duration = 5.0;
  CHECK_THROWS_AS((void)sim::run_simulate(cfg, gm), signals::ZeroReference);
}

TEST_CASE("identified-plant run stays bounded and logs the command") {
  const auto gm = sine_record(2.0, 12.0, 0.005);
  auto cfg = canonical_config();
  cfg.plant = sim::PlantKind::identified;
  cfg.duration = 10.0;
  cfg.gamma = 50.0;  // the hydraulic bridge is not the design plant; adapt gently
  const auto res = sim::run_simulate(cfg, gm);
  for (std::size_t i = 0; i < res.record.rows(); i += 1000) {
    CHECK(std::isfinite(res.record.d_table[i]));
    CHECK(std::abs(res.record.d_table[i]) < 1.0);
  }
  bool moved = false;
  for (double v : res.record.dt_cmd) {
    if (v != 0.0) moved = true;
  }
  CHECK(moved);
}

TEST_CASE("runaway adaptation aborts with a timestamped error") {
  const auto gm = sine_record(2.0, 12.0, 0.005);
  auto cfg = canonical_config();
  cfg.duration = 10.0;
  cfg.gamma = 1e18;
  CHECK_THROWS_AS((void)sim::run_simulate(cfg, gm), sim::NonFiniteState);
}

TEST_CASE("offline nrmse over record files") {
  const auto gm = sine_record(2.0, 8.0, 0.005);
  auto cfg = canonical_config();
  cfg.duration = 5.0;
  const auto res = sim::run_simulate(cfg, gm);

  const auto ref_path = temp_file("shaketab_ref.csv");
  signals::write_csv(res.record, ref_path.string());

  SUBCASE("a file against itself scores zero everywhere") {
    for (const char* col : {"r", "d_table", "v_table", "a_table", "F"}) {
      CHECK(sim::run_nrmse(ref_path.string(), ref_path.string(), col) == 0.0);
    }
  }

  SUBCASE("a constructed five-percent offset scores 0.05") {
    auto shifted = res.record;
    double peak = 0.0;
    for (double v : shifted.d_table) peak = std::max(peak, std::abs(v));
    for (double& v : shifted.d_table) v += 0.05 * peak;
    const auto meas_path = temp_file("shaketab_meas.csv");
    signals::write_csv(shifted, meas_path.string());
    CHECK(sim::run_nrmse(ref_path.string(), meas_path.string(), "d_table") ==
          doctest::Approx(0.05).epsilon(1e-12));
    std::filesystem::remove(meas_path);
  }

  SUBCASE("length mismatch is rejected") {
    auto shorter = res.record;
    for (auto* col : {&shorter.t, &shorter.r, &shorter.dt_cmd, &shorter.d_table,
                      &shorter.v_table, &shorter.a_table, &shorter.d1, &shorter.d2,
                      &shorter.a1_abs, &shorter.a2_abs, &shorter.F, &shorter.V_lyap}) {
      col->pop_back();
    }
    const auto meas_path = temp_file("shaketab_short.csv");
    signals::write_csv(shorter, meas_path.string());
    CHECK_THROWS_AS(
        (void)sim::run_nrmse(ref_path.string(), meas_path.string(), "d_table"),
        signals::LengthMismatch);
    std::filesystem::remove(meas_path);
  }

  SUBCASE("unknown column is a schema error") {
    CHECK_THROWS_AS(
        (void)sim::run_nrmse(ref_path.string(), ref_path.string(), "nope"),
        signals::SchemaMismatch);
  }

  std::filesystem::remove(ref_path);
}

TEST_CASE("bode export") {
  SUBCASE("acceleration magnitude is omega^2 times displacement magnitude") {
    const std::string vd = sim::run_bode("vd", 0.1, 1000.0, 40);
    const std::string va = sim::run_bode("va", 0.1, 1000.0, 40);
    std::istringstream vds(vd), vas(va);
    std::string l1, l2;
    std::getline(vds, l1);  // note line about the origin pole
    CHECK(l1.rfind("#", 0) == 0);
    std::getline(vds, l1);
    std::getline(vas, l2);
    CHECK(l1 == "omega_rad_s,mag,phase_rad");
    CHECK(l2 == "omega_rad_s,mag,phase_rad");
    while (std::getline(vds, l1) && std::getline(vas, l2)) {
      double w1, m1, p1, w2, m2, p2;
      REQUIRE(std::sscanf(l1.c_str(), "%lf,%lf,%lf", &w1, &m1, &p1) == 3);
      REQUIRE(std::sscanf(l2.c_str(), "%lf,%lf,%lf", &w2, &m2, &p2) == 3);
      CHECK(w1 == w2);
      CHECK(m2 == doctest::Approx(w1 * w1 * m1).epsilon(1e-9));
    }
  }

  SUBCASE("conditioning filter magnitude at its cutoff") {
    const double wc = 2.0 * std::numbers::pi * 50.0;
    const std::string csv = sim::run_bode("butterworth", wc, wc * 10.0, 2);
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);  // header
    std::getline(ss, line);
    double w, mag, ph;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &w, &mag, &ph) == 3);
    CHECK(mag == doctest::Approx(0.70711).epsilon(1e-3 / 0.70711));
  }

  SUBCASE("guard rails") {
    CHECK_THROWS_AS((void)sim::run_bode("nope", 0.1, 10.0, 5), sim::UnknownSystem);
    CHECK_THROWS_AS((void)sim::run_bode("vd", 0.0, 10.0, 5), std::invalid_argument);
  }
}
