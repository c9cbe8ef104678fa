#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace shaketab::sim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PlantKind { ideal, identified };

/// Specimen parameters; damping comes either as story dashpot constants or
/// as modal damping ratios (exclusive).
struct FrameConfig {
  double m1{0}, m2{0};
  double k1{0}, k2{0};
  std::optional<double> c1, c2;
  std::optional<double> zeta1, zeta2;
};

/// Everything one closed-loop run needs. Parsed from a flat key = value
/// file, '#' comments, one key per line.
struct ScenarioConfig {
  std::string record_path;
  PlantKind plant{PlantKind::ideal};
  double m_t{10.0};          // true table mass
  double m_t_nominal{10.0};  // mass the force shaping assumes
  std::optional<FrameConfig> frame;
  double gamma{4000.0};
  std::array<double, 3> reference_poles{-10.0, -12.0, -14.0};
  double dt{1e-4};
  std::optional<double> duration;  // absent: full record
  double filter_cutoff_hz{50.0};
  double inner_gain_kv{0.2};
  double record_scale{1.0};
  double nrmse_skip_seconds{2.0};
  bool freeze_adaptation{false};
  std::array<double, 3> w_hat0{0.0, 0.0, 0.0};
  std::optional<double> e_r;  // absent: fastest real reference pole
  bool csi_extension{false};
  double csi_gain{1.0};
  std::string output_path;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Emit every key in canonical order; parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

/// Structural checks beyond parsing (positivity, pole signs, the
/// identified-plant/frame guard). Called by the runner; exposed for tests.
void validate_config(const ScenarioConfig& cfg);

}  // namespace shaketab::sim
