#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace shaketab::lti {

/// Polynomial coefficients in descending degree, c[0]*s^n + ... + c[n].
template <typename Scalar = double>
using Poly = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Polyd = Poly<double>;

struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluate p(s) by Horner's rule.
template <typename Scalar, typename Arg>
Arg polyval(const Poly<Scalar>& p, const Arg& s) {
  Arg acc = Arg{0};
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    acc = acc * s + Arg{p[i]};
  }
  return acc;
}

/// Magnitude scale of p at |s| = m: sum of |c_k| * m^(n-k). Used to put
/// residuals |p(root)| in relative terms.
template <typename Scalar>
Scalar polyval_scale(const Poly<Scalar>& p, Scalar m) {
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    acc = acc * m + std::abs(p[i]);
  }
  return acc;
}

template <typename Scalar>
Poly<Scalar> poly_mul(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  Poly<Scalar> out = Poly<Scalar>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

/// Monic real polynomial with the given roots. The root set must be closed
/// under conjugation; residual imaginary parts are dropped after pairing.
template <typename Scalar = double>
Poly<Scalar> poly_from_roots(const std::vector<std::complex<Scalar>>& roots) {
  std::vector<std::complex<Scalar>> c(roots.size() + 1,
                                      std::complex<Scalar>{0});
  c[0] = std::complex<Scalar>{1};
  for (std::size_t k = 0; k < roots.size(); ++k) {
    for (std::size_t i = k + 1; i > 0; --i) {
      c[i] -= roots[k] * c[i - 1];
    }
  }
  Poly<Scalar> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = c[i].real();
  }
  return out;
}

namespace detail {

/// Durand-Kerner simultaneous iteration on a monic, scale-balanced
/// polynomial. Degree is small here (<= 10), so the O(n^2) sweep is fine.
template <typename Scalar>
std::vector<std::complex<Scalar>> durand_kerner(
    const std::vector<std::complex<Scalar>>& coeffs) {
  using C = std::complex<Scalar>;
  const std::size_t n = coeffs.size() - 1;
  std::vector<C> z(n);
  const C seed{Scalar(0.4), Scalar(0.9)};
  C acc{1, 0};
  for (std::size_t i = 0; i < n; ++i) {
    acc *= seed;
    z[i] = acc;
  }
  const int kMaxIter = 500;
  const Scalar kTol = Scalar(1e-12);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    Scalar move = 0;
    for (std::size_t i = 0; i < n; ++i) {
      C p{coeffs[0]};
      for (std::size_t k = 1; k <= n; ++k) {
        p = p * z[i] + coeffs[k];
      }
      C q{1, 0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) q *= z[i] - z[j];
      }
      if (std::abs(q) == Scalar(0)) {
        // collided estimates: nudge apart
        z[i] += C{Scalar(1e-6), Scalar(1e-6)};
        move = Scalar(1);
        continue;
      }
      const C dz = p / q;
      z[i] -= dz;
      move = std::max(move, std::abs(dz) / (Scalar(1) + std::abs(z[i])));
    }
    if (move < kTol) return z;
  }
  throw ConvergenceFailure("polynomial root iteration hit the 500-step cap");
}

}  // namespace detail

/// All roots of p, multiplicities preserved. Exact roots at the origin
/// (trailing zero coefficients) are deflated before iterating, and the
/// remaining polynomial is rescaled so its coefficients are balanced.
template <typename Scalar = double>
std::vector<std::complex<Scalar>> roots(const Poly<Scalar>& p) {
  using C = std::complex<Scalar>;
  if (p.size() == 0 || p[0] == Scalar(0)) {
    throw std::invalid_argument("roots: leading coefficient must be nonzero");
  }
  Eigen::Index deg = p.size() - 1;
  std::vector<C> out;
  // deflate exact origin roots
  Eigen::Index trailing = 0;
  while (trailing < deg && p[deg - trailing] == Scalar(0)) ++trailing;
  out.assign(static_cast<std::size_t>(trailing), C{0, 0});
  const Eigen::Index m = deg - trailing;
  if (m == 0) return out;

  // monic + variable scaling s = alpha*z to balance coefficient magnitudes
  std::vector<Scalar> monic(static_cast<std::size_t>(m) + 1);
  for (Eigen::Index k = 0; k <= m; ++k) monic[k] = p[k] / p[0];
  Scalar alpha = 0;
  for (Eigen::Index k = 1; k <= m; ++k) {
    if (monic[k] != Scalar(0)) {
      alpha = std::max(alpha, std::pow(std::abs(monic[k]), Scalar(1) / k));
    }
  }
  if (alpha == Scalar(0)) {
    out.insert(out.end(), static_cast<std::size_t>(m), C{0, 0});
    return out;
  }
  std::vector<C> scaled(static_cast<std::size_t>(m) + 1);
  Scalar ak = 1;
  for (Eigen::Index k = 0; k <= m; ++k) {
    scaled[k] = C{monic[k] / ak, 0};
    ak *= alpha;
  }
  for (const C& z : detail::durand_kerner<Scalar>(scaled)) {
    out.push_back(z * alpha);
  }
  return out;
}

}  // namespace shaketab::lti
