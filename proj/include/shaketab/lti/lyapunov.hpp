#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace shaketab::lti {

struct NotHurwitz : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// True when every eigenvalue of A has strictly negative real part.
inline bool is_hurwitz(const Eigen::MatrixXd& a) {
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(a, false).eigenvalues();
  return (ev.real().array() < 0.0).all();
}

/// Solve A^T P + P A = -I for the symmetric positive-definite certificate P.
///
/// The equation is vectorized through the Kronecker identity
///   vec(A^T P + P A) = (I (x) A^T + A^T (x) I) vec(P)
/// and solved dense; at the dimensions used here (a <= 3, a 9x9 system)
/// nothing fancier pays off.
inline Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a_r) {
  const Eigen::Index a = a_r.rows();
  if (a == 0 || a_r.cols() != a) {
    throw std::invalid_argument("solve_lyapunov: square matrix required");
  }
  if (!is_hurwitz(a_r)) {
    throw NotHurwitz("solve_lyapunov: matrix has an eigenvalue with nonnegative real part");
  }
  const Eigen::MatrixXd at = a_r.transpose();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a * a, a * a);
  // column-major vec: block (i,j) of m couples vec indices; assemble
  // I (x) A^T  and  A^T (x) I
  for (Eigen::Index j = 0; j < a; ++j) {
    m.block(j * a, j * a, a, a) += at;
    for (Eigen::Index i = 0; i < a; ++i) {
      for (Eigen::Index k = 0; k < a; ++k) {
        m(j * a + i, k * a + i) += at(j, k);
      }
    }
  }
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a, a);
  Eigen::VectorXd rhs = -Eigen::Map<Eigen::VectorXd>(id.data(), a * a);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) {
    throw SingularSystem("solve_lyapunov: Lyapunov operator is singular");
  }
  Eigen::VectorXd vec_p = lu.solve(rhs);
  Eigen::MatrixXd p = Eigen::Map<Eigen::MatrixXd>(vec_p.data(), a, a);
  p = 0.5 * (p + p.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(p);
  if (llt.info() != Eigen::Success) {
    throw SingularSystem("solve_lyapunov: certificate is not positive definite");
  }
  return p;
}

}  // namespace shaketab::lti
