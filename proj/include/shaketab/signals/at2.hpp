#pragma once

#include <string>

#include "shaketab/signals/time_series.hpp"

namespace shaketab::signals {

struct MalformedHeader : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SampleCountMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonFiniteSample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An ingested PEER-format acceleration record.
struct GroundMotion {
  std::string record_id;
  TimeSeries accel;   // unit g as parsed
  double source_dt{0};
};

/// Parse the PEER AT2 text layout: three free-text header lines, a fourth
/// line carrying the NPTS and DT values, then whitespace-separated samples
/// in g. Both "NPTS= n, DT= x SEC" and the older "n x NPTS, DT" headers are
/// accepted: the first two numeric tokens on the line are taken as NPTS and
/// DT.
GroundMotion parse_at2(const std::string& text, const std::string& record_id = "");

/// Inverse of parse_at2 for synthesizing records; reproduces sample values
/// exactly (17 significant digits).
std::string serialize_at2(const GroundMotion& gm);

/// parse_at2 over a file on disk; record_id defaults to the file stem.
GroundMotion load_at2(const std::string& path);

}  // namespace shaketab::signals
