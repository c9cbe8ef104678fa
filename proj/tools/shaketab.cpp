// shaketab: adaptive shake-table control scenarios from the command line.
//
// Exit codes: 0 success, 2 configuration error, 3 input-data error,
// 4 numerical abort.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "shaketab/log.hpp"
#include "shaketab/signals/at2.hpp"
#include "shaketab/signals/csv.hpp"
#include "shaketab/sim/config.hpp"
#include "shaketab/sim/runner.hpp"

namespace {

namespace fs = std::filesystem;
using shaketab::sim::ConfigError;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kInputError = 3;
constexpr int kNumericalAbort = 4;

int classify(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
      dynamic_cast<const shaketab::sim::UnknownSystem*>(&e) != nullptr ||
      dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
    return kConfigError;
  }
  if (dynamic_cast<const shaketab::sim::NonFiniteState*>(&e) != nullptr) {
    return kNumericalAbort;
  }
  return kInputError;
}

int do_simulate(const std::string& config_path) {
  shaketab::sim::ScenarioConfig cfg = shaketab::sim::load_config(config_path);
  shaketab::log::info("scenario " + config_path);
  shaketab::sim::run_simulate(cfg);
  return kOk;
}

int do_batch(const std::string& dir, int jobs) {
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
      configs.push_back(entry.path());
    }
  }
  std::sort(configs.begin(), configs.end());
  if (configs.empty()) {
    throw ConfigError("batch: no .cfg files in '" + dir + "'");
  }
  std::mutex out_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{kOk};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      const std::string path = configs[i].string();
      try {
        shaketab::sim::ScenarioConfig cfg = shaketab::sim::load_config(path);
        shaketab::sim::RunResult res = shaketab::sim::run_simulate(cfg);
        std::lock_guard lock(out_mutex);
        std::printf("[batch] %s: ok (nrmse_d=%.6f)\n", path.c_str(),
                    res.summary.nrmse_d);
      } catch (const std::exception& e) {
        const int code = classify(e);
        int cur = worst.load();
        while (cur < code && !worst.compare_exchange_weak(cur, code)) {
        }
        std::lock_guard lock(out_mutex);
        std::printf("[batch] %s: FAILED (%s)\n", path.c_str(), e.what());
      }
    }
  };
  const int n = std::max(1, jobs);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return worst.load();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive shake-table control simulator"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* simulate = app.add_subcommand("simulate", "run one closed-loop scenario");
  simulate->add_option("--config", config_path, "scenario config file")->required();

  std::string ref_csv, meas_csv, column;
  CLI::App* nrmse = app.add_subcommand("nrmse", "score one record column against another");
  nrmse->add_option("--ref", ref_csv, "reference record CSV")->required();
  nrmse->add_option("--meas", meas_csv, "measured record CSV")->required();
  nrmse->add_option("--column", column, "column name")->required();

  std::string system_name;
  double omega_min = 0.1, omega_max = 1000.0;
  int points = 200;
  std::string bode_out;
  CLI::App* bode = app.add_subcommand("bode", "frequency-response export");
  bode->add_option("--system", system_name, "vd | va | butterworth")->required();
  bode->add_option("--omega-min", omega_min, "grid start (rad/s)");
  bode->add_option("--omega-max", omega_max, "grid end (rad/s)");
  bode->add_option("--points", points, "grid points");
  bode->add_option("--output", bode_out, "write CSV here instead of stdout");

  std::string config_dir;
  int jobs = 1;
  CLI::App* batch = app.add_subcommand("batch", "run every .cfg in a directory");
  batch->add_option("--config-dir", config_dir, "directory of scenario configs")->required();
  batch->add_option("--jobs", jobs, "parallel scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (simulate->parsed()) return do_simulate(config_path);
    if (nrmse->parsed()) {
      const double v = shaketab::sim::run_nrmse(ref_csv, meas_csv, column);
      std::printf("NRMSE(%s) = %.12g\n", column.c_str(), v);
      return kOk;
    }
    if (bode->parsed()) {
      const std::string csv =
          shaketab::sim::run_bode(system_name, omega_min, omega_max, points);
      if (bode_out.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        std::ofstream out(bode_out, std::ios::binary);
        if (!out) throw shaketab::signals::IoFailure("cannot open '" + bode_out + "'");
        out << csv;
      }
      return kOk;
    }
    if (batch->parsed()) return do_batch(config_dir, jobs);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return classify(e);
  }
  return kOk;
}
