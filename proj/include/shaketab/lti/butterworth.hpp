#pragma once

#include <cmath>
#include <numbers>

#include "shaketab/lti/transfer_function.hpp"

namespace shaketab::lti {

struct NyquistViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Second-order low-pass Butterworth prototype
///   wc^2 / (s^2 + sqrt(2) wc s + wc^2),  wc = 2*pi*fc.
template <typename Scalar = double>
TransferFunction<Scalar> butterworth2_lowpass(Scalar fc_hz) {
  if (!(fc_hz > Scalar(0))) {
    throw std::invalid_argument("butterworth2_lowpass: fc must be positive");
  }
  const Scalar wc = Scalar(2) * std::numbers::pi_v<Scalar> * fc_hz;
  Poly<Scalar> num(1);
  num << wc * wc;
  Poly<Scalar> den(3);
  den << Scalar(1), std::numbers::sqrt2_v<Scalar> * wc, wc * wc;
  return TransferFunction<Scalar>(num, den);
}

/// Causal second-order discrete filter, direct form II transposed, zero
/// initial state.
struct DiscreteBiquad {
  double b0{0}, b1{0}, b2{0};  // feedforward
  double a1{0}, a2{0};         // feedback (monic a0 = 1)
  double z1{0}, z2{0};

  double step(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }
  void reset() { z1 = z2 = 0; }

  /// Discrete denominator [1, a1, a2]; its roots must lie inside the unit
  /// circle for a stable filter.
  Polyd den() const {
    Polyd d(3);
    d << 1.0, a1, a2;
    return d;
  }
};

/// Bilinear transform of a (at most) second-order continuous system. When
/// prewarp_omega > 0 the frequency axis is warped so the response at that
/// frequency is preserved exactly.
template <typename Scalar>
DiscreteBiquad discretize_bilinear(const TransferFunction<Scalar>& tf,
                                   double dt, double prewarp_omega = 0.0) {
  if (!(dt > 0)) throw std::invalid_argument("discretize_bilinear: dt must be positive");
  if (tf.den.size() > 3) {
    throw std::invalid_argument("discretize_bilinear: supports order <= 2");
  }
  double k = 2.0 / dt;
  if (prewarp_omega > 0.0) {
    const double half = 0.5 * prewarp_omega * dt;
    if (half >= std::numbers::pi / 2.0) {
      throw NyquistViolation("discretize_bilinear: prewarp frequency at or above Nyquist");
    }
    k = prewarp_omega / std::tan(half);
  }
  // pad to quadratic form n0 s^2 + n1 s + n2 over d0 s^2 + d1 s + d2
  double n[3] = {0, 0, 0}, d[3] = {0, 0, 0};
  for (Eigen::Index i = 0; i < tf.num.size(); ++i) {
    n[3 - tf.num.size() + i] = static_cast<double>(tf.num[i]);
  }
  for (Eigen::Index i = 0; i < tf.den.size(); ++i) {
    d[3 - tf.den.size() + i] = static_cast<double>(tf.den[i]);
  }
  const double k2 = k * k;
  const double a0 = d[0] * k2 + d[1] * k + d[2];
  if (a0 == 0.0) throw std::invalid_argument("discretize_bilinear: degenerate mapping");
  DiscreteBiquad f;
  f.b0 = (n[0] * k2 + n[1] * k + n[2]) / a0;
  f.b1 = (2.0 * (n[2] - n[0] * k2)) / a0;
  f.b2 = (n[0] * k2 - n[1] * k + n[2]) / a0;
  f.a1 = (2.0 * (d[2] - d[0] * k2)) / a0;
  f.a2 = (d[0] * k2 - d[1] * k + d[2]) / a0;
  return f;
}

/// The 50 Hz-class conditioning filter: second-order Butterworth low-pass,
/// bilinear with prewarping at the cutoff. Requires dt < 1/(2 fc).
inline DiscreteBiquad butterworth2_discrete(double fc_hz, double dt) {
  if (!(dt > 0) || !(dt < 1.0 / (2.0 * fc_hz))) {
    throw NyquistViolation("butterworth2_discrete: need 0 < dt < 1/(2 fc)");
  }
  const double wc = 2.0 * std::numbers::pi * fc_hz;
  return discretize_bilinear(butterworth2_lowpass(fc_hz), dt, wc);
}

}  // namespace shaketab::lti
