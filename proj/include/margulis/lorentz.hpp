#pragma once

// Lorentzian linear algebra on R^{2,1} with the form
//   B(x, y) = x1 y1 + x2 y2 - x3 y3.
// x3 is the timelike coordinate; the future null cone N_+ is the component
// with x3 > 0.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace margulis {

template <typename Scalar> using Vec21 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

using Vec21d = Vec21<double>;
using Mat3d = Mat3<double>;

inline constexpr double kDefaultTol = 1e-9;

enum class Causal { Zero, Null, Timelike, Spacelike };

struct CausalClass {
  Causal kind = Causal::Zero;
  bool future = false;

  friend bool operator==(const CausalClass &, const CausalClass &) = default;
};

/// J = diag(1, 1, -1), the Gram matrix of B.
template <typename Scalar> Mat3<Scalar> lorentz_gram() {
  return Vec21<Scalar>(1, 1, -1).asDiagonal();
}

template <typename Derived1, typename Derived2>
typename Derived1::Scalar bform(const Eigen::MatrixBase<Derived1> &x,
                                const Eigen::MatrixBase<Derived2> &y) {
  return x(0) * y(0) + x(1) * y(1) - x(2) * y(2);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived> &m) {
  return m.allFinite();
}

/// Classifies x relative to the light cone. Thresholds scale with the
/// max-norm of x, so the result is invariant under positive rescaling.
template <typename Derived>
CausalClass causal_class(const Eigen::MatrixBase<Derived> &x,
                         typename Derived::Scalar tol = kDefaultTol) {
  using std::abs;
  const auto scale = x.template lpNorm<Eigen::Infinity>();
  if (scale <= tol)
    return {Causal::Zero, false};
  const auto q = bform(x, x);
  const auto band = tol * scale * scale;
  const bool future = x(2) > 0;
  if (abs(q) <= band)
    return {Causal::Null, future};
  if (q < -band)
    return {Causal::Timelike, future};
  return {Causal::Spacelike, false};
}

/// Sign of det[a b c] (columns). Returns 0 when the determinant is within
/// tol of zero relative to the product of the column norms.
template <typename Scalar>
int orientation(const Vec21<Scalar> &a, const Vec21<Scalar> &b,
                const Vec21<Scalar> &c, Scalar tol = Scalar(kDefaultTol)) {
  Mat3<Scalar> m;
  m << a, b, c;
  const Scalar det = m.determinant();
  const Scalar scale = a.norm() * b.norm() * c.norm();
  if (std::abs(det) <= tol * scale)
    return 0;
  return det > 0 ? 1 : -1;
}

/// True iff M^T J M = J entrywise within tol. For matrices with entries
/// larger than one the tolerance is scaled by the squared max-entry, which
/// is the size of the rounding error in M^T J M.
template <typename Derived>
bool is_lorentz_isometry(const Eigen::MatrixBase<Derived> &m,
                         typename Derived::Scalar tol = kDefaultTol) {
  using Scalar = typename Derived::Scalar;
  if (!m.allFinite())
    return false;
  const Mat3<Scalar> j = lorentz_gram<Scalar>();
  const Mat3<Scalar> defect = m.transpose() * j * m - j;
  const Scalar size = m.template lpNorm<Eigen::Infinity>();
  const Scalar scale = size > 1 ? size * size : Scalar(1);
  return defect.template lpNorm<Eigen::Infinity>() <= tol * scale;
}

/// An isometry preserves time orientation iff it maps e3 into the future.
template <typename Derived>
bool preserves_future_cone(const Eigen::MatrixBase<Derived> &m) {
  return m(2, 2) > 0;
}

} // namespace margulis
