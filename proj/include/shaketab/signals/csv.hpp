#pragma once

#include <string>

#include "shaketab/sim/record.hpp"
#include "shaketab/signals/time_series.hpp"

namespace shaketab::signals {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Serialize a record under the fixed column schema; values are printed with
/// 17 significant digits so a read-back is bit-exact.
std::string format_csv(const sim::SimulationRecord& record);
void write_csv(const sim::SimulationRecord& record, const std::string& path);

/// Parse a record CSV; the header must match the schema exactly.
sim::SimulationRecord parse_csv(const std::string& text);
sim::SimulationRecord read_csv(const std::string& path);

}  // namespace shaketab::signals
