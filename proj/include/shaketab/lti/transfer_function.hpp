#pragma once

#include <complex>
#include <stdexcept>

#include "shaketab/lti/polynomial.hpp"

namespace shaketab::lti {

struct ImproperSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularAtFrequency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rational LTI system num(s)/den(s), coefficients in descending degree.
/// Proper by construction: deg(num) <= deg(den), leading den coefficient
/// nonzero.
template <typename Scalar = double>
struct TransferFunction {
  Poly<Scalar> num;
  Poly<Scalar> den;

  TransferFunction(Poly<Scalar> num_in, Poly<Scalar> den_in)
      : num(std::move(num_in)), den(std::move(den_in)) {
    if (den.size() == 0 || den[0] == Scalar(0)) {
      throw std::invalid_argument(
          "TransferFunction: leading denominator coefficient must be nonzero");
    }
    if (num.size() == 0) {
      throw std::invalid_argument("TransferFunction: empty numerator");
    }
    // strip exact leading zeros of the numerator so degrees are meaningful
    Eigen::Index lead = 0;
    while (lead + 1 < num.size() && num[lead] == Scalar(0)) ++lead;
    if (lead > 0) num = num.tail(num.size() - lead).eval();
    if (num.size() > den.size()) {
      throw ImproperSystem("TransferFunction: numerator degree exceeds denominator degree");
    }
  }

  Eigen::Index degree() const { return den.size() - 1; }
};

using TransferFunctiond = TransferFunction<double>;

/// H(j*omega) = num(j*omega)/den(j*omega).
template <typename Scalar>
std::complex<Scalar> freq_response(const TransferFunction<Scalar>& tf,
                                   Scalar omega) {
  if (!std::isfinite(omega)) {
    throw std::invalid_argument("freq_response: omega must be finite");
  }
  const std::complex<Scalar> s{0, omega};
  const std::complex<Scalar> d = polyval(tf.den, s);
  const Scalar scale = polyval_scale(tf.den, std::abs(omega));
  if (std::abs(d) <= Scalar(1e-14) * scale || scale == Scalar(0)) {
    throw SingularAtFrequency("freq_response: evaluation at a pole");
  }
  return polyval(tf.num, s) / d;
}

/// Denominator roots, multiplicities preserved.
template <typename Scalar>
std::vector<std::complex<Scalar>> poles(const TransferFunction<Scalar>& tf) {
  if (tf.den.size() < 2) {
    throw std::invalid_argument("poles: denominator must have degree >= 1");
  }
  return roots(tf.den);
}

}  // namespace shaketab::lti
