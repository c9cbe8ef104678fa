#pragma once

#include <complex>

#include <Eigen/Dense>

#include "shaketab/lti/transfer_function.hpp"

namespace shaketab::lti {

/// Single-input single-output state-space system
///   x' = A x + B u,  y = C x + D u.
template <typename Scalar = double>
struct StateSpace {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> A;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> B;
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> C;
  Scalar D{0};

  Eigen::Index n() const { return A.rows(); }

  Scalar output(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
                Scalar u) const {
    return (n() > 0 ? Scalar(C * x) : Scalar(0)) + D * u;
  }
};

using StateSpaced = StateSpace<double>;

/// Controllable canonical realization of a proper transfer function. The
/// denominator is normalized monic; an order-zero system collapses to the
/// static gain D.
template <typename Scalar>
StateSpace<Scalar> to_state_space(const TransferFunction<Scalar>& tf) {
  const Eigen::Index n = tf.degree();
  StateSpace<Scalar> ss;
  // monic denominator and numerator padded to full length
  Poly<Scalar> a = tf.den / tf.den[0];
  Poly<Scalar> b = Poly<Scalar>::Zero(n + 1);
  b.tail(tf.num.size()) = tf.num / tf.den[0];

  ss.D = b[0];
  ss.A.setZero(n, n);
  ss.B.setZero(n);
  ss.C.setZero(1, n);
  if (n == 0) return ss;

  for (Eigen::Index j = 0; j < n; ++j) {
    ss.A(0, j) = -a[j + 1];
    ss.C(0, j) = b[j + 1] - ss.D * a[j + 1];
  }
  for (Eigen::Index i = 1; i < n; ++i) ss.A(i, i - 1) = Scalar(1);
  ss.B[0] = Scalar(1);
  return ss;
}

/// C (j*omega*I - A)^{-1} B + D.
template <typename Scalar>
std::complex<Scalar> freq_response(const StateSpace<Scalar>& ss, Scalar omega) {
  using C = std::complex<Scalar>;
  if (!std::isfinite(omega)) {
    throw std::invalid_argument("freq_response: omega must be finite");
  }
  const Eigen::Index n = ss.n();
  if (n == 0) return C{ss.D, 0};
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> m =
      (-ss.A).template cast<C>();
  m.diagonal().array() += C{0, omega};
  Eigen::PartialPivLU<Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>> lu(m);
  const Eigen::Matrix<C, Eigen::Dynamic, 1> z =
      lu.solve(ss.B.template cast<C>());
  if (!z.allFinite()) {
    throw SingularAtFrequency("freq_response: resolvent is singular at omega");
  }
  return (ss.C.template cast<C>() * z).value() + C{ss.D, 0};
}

}  // namespace shaketab::lti
