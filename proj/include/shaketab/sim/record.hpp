#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace shaketab::sim {

/// Time-aligned log of one closed-loop run. Columns mirror the CSV schema
/// one-to-one; all columns have equal length and t advances by the
/// simulation step.
struct SimulationRecord {
  std::vector<double> t;
  std::vector<double> r;        // reference input sample
  std::vector<double> dt_cmd;   // displacement command to the inner loop
  std::vector<double> d_table;
  std::vector<double> v_table;
  std::vector<double> a_table;
  std::vector<double> d1, d2;         // story drifts relative to the table
  std::vector<double> a1_abs, a2_abs; // absolute floor accelerations
  std::vector<double> F;        // adaptive control force
  std::vector<double> V_lyap;   // Lyapunov diagnostic

  static constexpr const char* kHeader =
      "t,r,dt_cmd,d_table,v_table,a_table,d1,d2,a1_abs,a2_abs,F,V_lyap";

  std::size_t rows() const { return t.size(); }
  void reserve(std::size_t n);
  std::vector<double>* column(const std::string& name);
  const std::vector<double>* column(const std::string& name) const;
};

}  // namespace shaketab::sim
