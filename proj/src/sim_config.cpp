#include "shaketab/sim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace shaketab::sim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: key '" + key + "' must be a boolean, got '" + value + "'");
}

std::array<double, 3> to_triple(const std::string& key, const std::string& value) {
  std::array<double, 3> out{};
  std::stringstream ss(value);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) throw ConfigError("config: key '" + key + "' needs exactly 3 values");
    out[i++] = to_double(key, trim(item));
  }
  if (i != 3) throw ConfigError("config: key '" + key + "' needs exactly 3 values");
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  FrameConfig frame;
  bool has_frame = false;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config: line " + std::to_string(line_no) + " has an empty key or value");
    }

    if (key == "record_path") {
      cfg.record_path = value;
    } else if (key == "plant") {
      if (value == "ideal") cfg.plant = PlantKind::ideal;
      else if (value == "identified") cfg.plant = PlantKind::identified;
      else throw ConfigError("config: plant must be 'ideal' or 'identified'");
    } else if (key == "m_t") {
      cfg.m_t = to_double(key, value);
    } else if (key == "m_t_nominal") {
      cfg.m_t_nominal = to_double(key, value);
    } else if (key == "m1") { frame.m1 = to_double(key, value); has_frame = true;
    } else if (key == "m2") { frame.m2 = to_double(key, value); has_frame = true;
    } else if (key == "k1") { frame.k1 = to_double(key, value); has_frame = true;
    } else if (key == "k2") { frame.k2 = to_double(key, value); has_frame = true;
    } else if (key == "c1") { frame.c1 = to_double(key, value); has_frame = true;
    } else if (key == "c2") { frame.c2 = to_double(key, value); has_frame = true;
    } else if (key == "zeta1") { frame.zeta1 = to_double(key, value); has_frame = true;
    } else if (key == "zeta2") { frame.zeta2 = to_double(key, value); has_frame = true;
    } else if (key == "gamma") {
      cfg.gamma = to_double(key, value);
    } else if (key == "reference_poles") {
      cfg.reference_poles = to_triple(key, value);
    } else if (key == "dt") {
      cfg.dt = to_double(key, value);
    } else if (key == "duration") {
      cfg.duration = to_double(key, value);
    } else if (key == "filter_cutoff_hz") {
      cfg.filter_cutoff_hz = to_double(key, value);
    } else if (key == "inner_gain_kv") {
      cfg.inner_gain_kv = to_double(key, value);
    } else if (key == "record_scale") {
      cfg.record_scale = to_double(key, value);
    } else if (key == "nrmse_skip_seconds") {
      cfg.nrmse_skip_seconds = to_double(key, value);
    } else if (key == "freeze_adaptation") {
      cfg.freeze_adaptation = to_bool(key, value);
    } else if (key == "w_hat0") {
      cfg.w_hat0 = to_triple(key, value);
    } else if (key == "e_r") {
      if (value == "auto") cfg.e_r.reset();
      else cfg.e_r = to_double(key, value);
    } else if (key == "csi_extension") {
      cfg.csi_extension = to_bool(key, value);
    } else if (key == "csi_gain") {
      cfg.csi_gain = to_double(key, value);
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  if (has_frame) cfg.frame = frame;
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::string out;
  auto emit = [&out](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  emit("record_path", cfg.record_path);
  emit("plant", cfg.plant == PlantKind::ideal ? "ideal" : "identified");
  emit("m_t", format_double(cfg.m_t));
  emit("m_t_nominal", format_double(cfg.m_t_nominal));
  if (cfg.frame) {
    emit("m1", format_double(cfg.frame->m1));
    emit("m2", format_double(cfg.frame->m2));
    emit("k1", format_double(cfg.frame->k1));
    emit("k2", format_double(cfg.frame->k2));
    if (cfg.frame->c1) emit("c1", format_double(*cfg.frame->c1));
    if (cfg.frame->c2) emit("c2", format_double(*cfg.frame->c2));
    if (cfg.frame->zeta1) emit("zeta1", format_double(*cfg.frame->zeta1));
    if (cfg.frame->zeta2) emit("zeta2", format_double(*cfg.frame->zeta2));
  }
  emit("gamma", format_double(cfg.gamma));
  emit("reference_poles", format_double(cfg.reference_poles[0]) + "," +
                              format_double(cfg.reference_poles[1]) + "," +
                              format_double(cfg.reference_poles[2]));
  emit("dt", format_double(cfg.dt));
  if (cfg.duration) emit("duration", format_double(*cfg.duration));
  emit("filter_cutoff_hz", format_double(cfg.filter_cutoff_hz));
  emit("inner_gain_kv", format_double(cfg.inner_gain_kv));
  emit("record_scale", format_double(cfg.record_scale));
  emit("nrmse_skip_seconds", format_double(cfg.nrmse_skip_seconds));
  emit("freeze_adaptation", cfg.freeze_adaptation ? "true" : "false");
  emit("w_hat0", format_double(cfg.w_hat0[0]) + "," + format_double(cfg.w_hat0[1]) +
                     "," + format_double(cfg.w_hat0[2]));
  emit("e_r", cfg.e_r ? format_double(*cfg.e_r) : "auto");
  emit("csi_extension", cfg.csi_extension ? "true" : "false");
  emit("csi_gain", format_double(cfg.csi_gain));
  emit("output_path", cfg.output_path);
  return out;
}

void validate_config(const ScenarioConfig& cfg) {
  if (!(cfg.dt > 0)) throw ConfigError("config: dt must be positive");
  if (cfg.duration && !(*cfg.duration > 0)) {
    throw ConfigError("config: duration must be positive");
  }
  if (!(cfg.gamma > 0)) throw ConfigError("config: gamma must be positive");
  if (!(cfg.m_t > 0) || !(cfg.m_t_nominal > 0)) {
    throw ConfigError("config: table masses must be positive");
  }
  if (!(cfg.filter_cutoff_hz > 0)) {
    throw ConfigError("config: filter_cutoff_hz must be positive");
  }
  if (!(cfg.record_scale != 0.0)) {
    throw ConfigError("config: record_scale must be nonzero");
  }
  if (cfg.nrmse_skip_seconds < 0) {
    throw ConfigError("config: nrmse_skip_seconds must be nonnegative");
  }
  for (double p : cfg.reference_poles) {
    if (!(p < 0)) throw ConfigError("config: reference poles must be strictly negative");
  }
  if (cfg.frame) {
    const FrameConfig& f = *cfg.frame;
    if (!(f.m1 > 0) || !(f.m2 > 0) || !(f.k1 > 0) || !(f.k2 > 0)) {
      throw ConfigError("config: frame needs positive m1, m2, k1, k2");
    }
    const bool dashpots = f.c1.has_value() || f.c2.has_value();
    const bool ratios = f.zeta1.has_value() || f.zeta2.has_value();
    if (dashpots && ratios) {
      throw ConfigError("config: give either c1/c2 or zeta1/zeta2, not both");
    }
    if ((f.c1.has_value() != f.c2.has_value()) ||
        (f.zeta1.has_value() != f.zeta2.has_value())) {
      throw ConfigError("config: damping values must come in pairs");
    }
    if (cfg.plant == PlantKind::identified && !cfg.csi_extension) {
      throw ConfigError(
          "config: the identified model was fit on the bare table; mounting a frame "
          "on it requires csi_extension = true");
    }
  }
  if (cfg.record_path.empty()) throw ConfigError("config: record_path is required");
}

}  // namespace shaketab::sim
