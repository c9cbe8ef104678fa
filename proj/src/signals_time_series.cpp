#include "shaketab/signals/time_series.hpp"

#include <cmath>

namespace shaketab::signals {

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::meters: return "m";
    case Unit::meters_per_s: return "m/s";
    case Unit::meters_per_s2: return "m/s2";
    case Unit::g: return "g";
    case Unit::volts: return "V";
    case Unit::newtons: return "N";
    case Unit::dimensionless: return "-";
  }
  return "?";
}

Unit derivative_unit(Unit u) {
  switch (u) {
    case Unit::meters: return Unit::meters_per_s;
    case Unit::meters_per_s: return Unit::meters_per_s2;
    default: return Unit::dimensionless;
  }
}

TimeSeries::TimeSeries(double dt_in, std::vector<double> values_in, Unit unit_in)
    : dt(dt_in), values(std::move(values_in)), unit(unit_in) {
  if (!(dt > 0.0)) throw std::invalid_argument("TimeSeries: dt must be positive");
  if (values.empty()) throw std::invalid_argument("TimeSeries: values must be non-empty");
}

TimeSeries to_mps2(const TimeSeries& ts) {
  if (ts.unit == Unit::meters_per_s2) return ts;
  if (ts.unit != Unit::g) {
    throw UnitMismatch("to_mps2: series is neither g nor m/s^2");
  }
  TimeSeries out = ts;
  for (double& v : out.values) v *= kStandardGravity;
  out.unit = Unit::meters_per_s2;
  return out;
}

double nrmse(const std::vector<double>& reference,
             const std::vector<double>& measured) {
  if (reference.size() != measured.size() || reference.empty()) {
    throw LengthMismatch("nrmse: signals must have equal nonzero length");
  }
  double peak = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    peak = std::max(peak, std::abs(reference[i]));
    const double d = reference[i] - measured[i];
    sum_sq += d * d;
  }
  if (peak == 0.0) {
    throw ZeroReference("nrmse: reference signal is identically zero");
  }
  return std::sqrt(sum_sq / static_cast<double>(reference.size())) / peak;
}

double nrmse(const TimeSeries& reference, const TimeSeries& measured) {
  if (reference.unit != measured.unit) {
    throw UnitMismatch("nrmse: unit tags differ");
  }
  if (reference.dt != measured.dt) {
    throw LengthMismatch("nrmse: sample intervals differ");
  }
  return nrmse(reference.values, measured.values);
}

TimeSeries resample(const TimeSeries& ts, double dt_new) {
  if (!(dt_new > 0.0)) throw std::invalid_argument("resample: dt_new must be positive");
  const std::size_t n = ts.size();
  const double duration = ts.duration();
  const std::size_t m =
      static_cast<std::size_t>(std::floor(duration / dt_new + 1e-9)) + 1;
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double pos = (static_cast<double>(i) * dt_new) / ts.dt;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9 && nearest >= 0.0 &&
        nearest < static_cast<double>(n)) {
      out[i] = ts.values[static_cast<std::size_t>(nearest)];
      continue;
    }
    std::size_t k = static_cast<std::size_t>(pos);
    if (k >= n - 1) k = n - 2;
    const double w = pos - static_cast<double>(k);
    out[i] = (1.0 - w) * ts.values[k] + w * ts.values[k + 1];
  }
  return TimeSeries(dt_new, std::move(out), ts.unit);
}

TimeSeries differentiate(const TimeSeries& ts) {
  const std::size_t n = ts.size();
  if (n < 3) throw TooShort("differentiate: need at least 3 samples");
  std::vector<double> out(n);
  const double inv2dt = 1.0 / (2.0 * ts.dt);
  out[0] = (-3.0 * ts.values[0] + 4.0 * ts.values[1] - ts.values[2]) * inv2dt;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (ts.values[i + 1] - ts.values[i - 1]) * inv2dt;
  }
  out[n - 1] =
      (3.0 * ts.values[n - 1] - 4.0 * ts.values[n - 2] + ts.values[n - 3]) * inv2dt;
  return TimeSeries(ts.dt, std::move(out), derivative_unit(ts.unit));
}

TimeSeries integrate_trapezoid(const TimeSeries& ts, Unit result_unit) {
  std::vector<double> out(ts.size());
  out[0] = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * ts.dt * (ts.values[i - 1] + ts.values[i]);
  }
  return TimeSeries(ts.dt, std::move(out), result_unit);
}

TimeSeries detrend_linear(const TimeSeries& ts) {
  const std::size_t n = ts.size();
  if (n == 1) {
    return TimeSeries(ts.dt, {0.0}, ts.unit);
  }
  // least squares of v = a + b*t on the uniform grid
  double st = 0, sv = 0, stt = 0, stv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * ts.dt;
    st += t;
    sv += ts.values[i];
    stt += t * t;
    stv += t * ts.values[i];
  }
  const double nn = static_cast<double>(n);
  const double denom = nn * stt - st * st;
  const double b = denom != 0.0 ? (nn * stv - st * sv) / denom : 0.0;
  const double a = (sv - b * st) / nn;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ts.values[i] - (a + b * static_cast<double>(i) * ts.dt);
  }
  return TimeSeries(ts.dt, std::move(out), ts.unit);
}

}  // namespace shaketab::signals
