#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace shaketab::signals {

struct LengthMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnitMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroReference : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooShort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Standard gravity, used for g <-> m/s^2 conversion.
inline constexpr double kStandardGravity = 9.80665;

enum class Unit {
  meters,
  meters_per_s,
  meters_per_s2,
  g,
  volts,
  newtons,
  dimensionless,
};

const char* unit_name(Unit u);

/// Unit of the time derivative of a series; chains m -> m/s -> m/s^2,
/// anything else degrades to dimensionless.
Unit derivative_unit(Unit u);

/// Uniformly sampled signal. Plain data, immutable by convention after
/// construction; every operation returns a new series.
struct TimeSeries {
  double dt{0};
  std::vector<double> values;
  Unit unit{Unit::dimensionless};

  TimeSeries() = default;
  TimeSeries(double dt_in, std::vector<double> values_in, Unit unit_in);

  std::size_t size() const { return values.size(); }
  double duration() const { return dt * (static_cast<double>(values.size()) - 1.0); }
};

/// Convert acceleration in g to m/s^2 (identity when already m/s^2).
TimeSeries to_mps2(const TimeSeries& ts);

/// Normalized root-mean-square error
///   sqrt( sum_i (R_i - M_i)^2 / N ) / max|R|.
double nrmse(const TimeSeries& reference, const TimeSeries& measured);

/// Same metric on raw sample spans (no unit/grid bookkeeping).
double nrmse(const std::vector<double>& reference,
             const std::vector<double>& measured);

/// Linear interpolation onto a new uniform grid spanning the same duration.
/// Grid points that coincide with source samples reproduce them exactly.
TimeSeries resample(const TimeSeries& ts, double dt_new);

/// Second-order finite differences: central in the interior, one-sided at
/// the endpoints. Needs at least 3 samples.
TimeSeries differentiate(const TimeSeries& ts);

/// Cumulative trapezoidal integral from zero initial condition.
TimeSeries integrate_trapezoid(const TimeSeries& ts, Unit result_unit);

/// Subtract the least-squares straight line a + b*t.
TimeSeries detrend_linear(const TimeSeries& ts);

}  // namespace shaketab::signals
