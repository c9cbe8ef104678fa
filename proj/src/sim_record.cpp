#include "shaketab/sim/record.hpp"

#include <string>

namespace shaketab::sim {

void SimulationRecord::reserve(std::size_t n) {
  for (auto* col : {&t, &r, &dt_cmd, &d_table, &v_table, &a_table, &d1, &d2,
                    &a1_abs, &a2_abs, &F, &V_lyap}) {
    col->reserve(n);
  }
}

std::vector<double>* SimulationRecord::column(const std::string& name) {
  if (name == "t") return &t;
  if (name == "r") return &r;
  if (name == "dt_cmd") return &dt_cmd;
  if (name == "d_table") return &d_table;
  if (name == "v_table") return &v_table;
  if (name == "a_table") return &a_table;
  if (name == "d1") return &d1;
  if (name == "d2") return &d2;
  if (name == "a1_abs") return &a1_abs;
  if (name == "a2_abs") return &a2_abs;
  if (name == "F") return &F;
  if (name == "V_lyap") return &V_lyap;
  return nullptr;
}

const std::vector<double>* SimulationRecord::column(const std::string& name) const {
  return const_cast<SimulationRecord*>(this)->column(name);
}

}  // namespace shaketab::sim
