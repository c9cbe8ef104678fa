#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "shaketab/lti/polynomial.hpp"

namespace shaketab::lti {

struct Uncontrollable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool conjugate_closed(const std::vector<std::complex<double>>& s,
                             double tol = 1e-9) {
  std::vector<bool> used(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (used[i] || std::abs(s[i].imag()) <= tol) continue;
    bool found = false;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i || used[j]) continue;
      if (std::abs(s[j] - std::conj(s[i])) <= tol * (1.0 + std::abs(s[i]))) {
        used[i] = used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Single-input state feedback by Ackermann's formula: returns K such that
/// eig(A - B K) equals the desired set. The pair (A, B) must be controllable
/// and the desired set closed under conjugation.
inline Eigen::RowVectorXd place_poles(
    const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
    const std::vector<std::complex<double>>& desired) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) {
    throw std::invalid_argument("place_poles: dimension mismatch");
  }
  if (static_cast<Eigen::Index>(desired.size()) != n) {
    throw std::invalid_argument("place_poles: need exactly n desired poles");
  }
  if (!conjugate_closed(desired)) {
    throw std::invalid_argument("place_poles: desired set not closed under conjugation");
  }
  Eigen::MatrixXd ctrl(n, n);
  Eigen::VectorXd col = b;
  for (Eigen::Index j = 0; j < n; ++j) {
    ctrl.col(j) = col;
    col = a * col;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ctrl);
  if (lu.rank() < n) {
    throw Uncontrollable("place_poles: controllability matrix is rank deficient");
  }
  // chi(A) for the desired characteristic polynomial, by matrix Horner
  const Polyd chi = poly_from_roots(desired);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n) * chi[0];
  for (Eigen::Index k = 1; k < chi.size(); ++k) {
    acc = (acc * a).eval();
    acc.diagonal().array() += chi[k];
  }
  // K = e_n^T Ctrl^{-1} chi(A)
  Eigen::VectorXd en = Eigen::VectorXd::Zero(n);
  en[n - 1] = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_t(ctrl.transpose());
  const Eigen::RowVectorXd row = lu_t.solve(en).transpose();
  return row * acc;
}

}  // namespace shaketab::lti
