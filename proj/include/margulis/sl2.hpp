#pragma once

// SL(2,R), its Lie algebra sl(2,R) with the trace form B(X,Y) = tr(XY)/2,
// the isometry psi : sl(2,R) -> R^{2,1} and the adjoint representation
// rho : SL(2,R) -> SO^0(2,1) written in the basis
//   e1 = [[1,0],[0,-1]], e2 = [[0,1],[1,0]], e3 = [[0,-1],[1,0]].

#include "margulis/error.hpp"
#include "margulis/lorentz.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace margulis {

template <typename Scalar> using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
using Mat2d = Mat2<double>;

/// Hyperbolicity margin: |tr g| must exceed 2 by this much.
inline constexpr double kHyperbolicTol = 1e-9;

/// An element of SL(2,R). The determinant is checked on construction;
/// products are formed without re-checking.
template <typename Scalar> class SL2 {
public:
  using Matrix = Mat2<Scalar>;

  SL2() : m_(Matrix::Identity()) {}

  explicit SL2(const Matrix &m, Scalar tol = Scalar(kDefaultTol)) : m_(m) {
    using std::abs;
    if (!m.allFinite())
      throw Error(ErrorCode::NotUnimodular, "matrix has non-finite entries");
    const Scalar det = m.determinant();
    if (abs(det - Scalar(1)) > tol) {
      std::ostringstream os;
      os << "determinant " << double(det) << " differs from 1";
      throw Error(ErrorCode::NotUnimodular, os.str());
    }
  }

  SL2(Scalar a, Scalar b, Scalar c, Scalar d,
      Scalar tol = Scalar(kDefaultTol))
      : SL2((Matrix() << a, b, c, d).finished(), tol) {}

  static SL2 unchecked(const Matrix &m) {
    SL2 g;
    g.m_ = m;
    return g;
  }

  static SL2 identity() { return SL2(); }

  const Matrix &matrix() const { return m_; }
  Scalar a() const { return m_(0, 0); }
  Scalar b() const { return m_(0, 1); }
  Scalar c() const { return m_(1, 0); }
  Scalar d() const { return m_(1, 1); }
  Scalar trace() const { return m_(0, 0) + m_(1, 1); }
  Scalar det() const { return m_.determinant(); }

  /// Exact inverse for unit determinant: swap the diagonal, negate the rest.
  SL2 inverse() const {
    Matrix inv;
    inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
    return unchecked(inv);
  }

  SL2 operator-() const { return unchecked(-m_); }

  friend SL2 operator*(const SL2 &x, const SL2 &y) {
    return unchecked(x.m_ * y.m_);
  }

  SL2 &operator*=(const SL2 &y) {
    m_ = m_ * y.m_;
    return *this;
  }

private:
  Matrix m_;
};

using SL2d = SL2<double>;

/// A traceless 2x2 matrix [[v1, v2], [v3, -v1]].
template <typename Scalar> struct Sl2Vec {
  using Coords = Eigen::Matrix<Scalar, 3, 1>;
  Coords v = Coords::Zero();

  Sl2Vec() = default;
  Sl2Vec(Scalar v1, Scalar v2, Scalar v3) : v(v1, v2, v3) {}
  explicit Sl2Vec(const Coords &c) : v(c) {}

  /// Traceless part of an arbitrary 2x2 matrix.
  static Sl2Vec from_matrix(const Mat2<Scalar> &m) {
    return Sl2Vec((m(0, 0) - m(1, 1)) / 2, m(0, 1), m(1, 0));
  }

  Mat2<Scalar> matrix() const {
    Mat2<Scalar> m;
    m << v(0), v(1), v(2), -v(0);
    return m;
  }

  Scalar det() const { return -(v(0) * v(0) + v(1) * v(2)); }

  friend Sl2Vec operator+(const Sl2Vec &x, const Sl2Vec &y) {
    return Sl2Vec(Coords(x.v + y.v));
  }
  friend Sl2Vec operator-(const Sl2Vec &x, const Sl2Vec &y) {
    return Sl2Vec(Coords(x.v - y.v));
  }
  friend Sl2Vec operator*(Scalar s, const Sl2Vec &x) {
    return Sl2Vec(Coords(s * x.v));
  }
  Sl2Vec operator-() const { return Sl2Vec(Coords(-v)); }
};

using Sl2Vecd = Sl2Vec<double>;

template <typename Scalar> Sl2Vec<Scalar> sl2_basis(int i) {
  switch (i) {
  case 0:
    return {1, 0, 0};
  case 1:
    return {0, 1, 1};
  default:
    return {0, -1, 1};
  }
}

template <typename Scalar>
Scalar bform_sl2(const Sl2Vec<Scalar> &x, const Sl2Vec<Scalar> &y) {
  return (x.matrix() * y.matrix()).trace() / 2;
}

template <typename Scalar> Vec21<Scalar> psi(const Sl2Vec<Scalar> &x) {
  return {x.v(0), (x.v(1) + x.v(2)) / 2, (-x.v(1) + x.v(2)) / 2};
}

template <typename Scalar> Sl2Vec<Scalar> psi_inv(const Vec21<Scalar> &x) {
  return {x(0), x(1) - x(2), x(1) + x(2)};
}

/// Ad(g) X = g X g^{-1}.
template <typename Scalar>
Sl2Vec<Scalar> adjoint(const SL2<Scalar> &g, const Sl2Vec<Scalar> &x) {
  return Sl2Vec<Scalar>::from_matrix(g.matrix() * x.matrix() *
                                     g.inverse().matrix());
}

/// The adjoint action of g on R^{2,1} through psi. rho(-g) = rho(g).
template <typename Scalar> Mat3<Scalar> rho(const SL2<Scalar> &g) {
  const Scalar a = g.a(), b = g.b(), c = g.c(), d = g.d();
  const Scalar a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
  Mat3<Scalar> r;
  r << 1 + 2 * b * c, -a * c + b * d, a * c + b * d,             //
      -a * b + c * d, (a2 - b2 - c2 + d2) / 2, (-a2 - b2 + c2 + d2) / 2, //
      a * b + c * d, (-a2 + b2 - c2 + d2) / 2, (a2 + b2 + c2 + d2) / 2;
  return r;
}

/// Derivative of rho at the identity, sl(2,R) -> o(2,1). The boost block
/// in the (x2, x3) plane is symmetric, as it must be for J-skew matrices.
template <typename Scalar> Mat3<Scalar> rho_star(const Sl2Vec<Scalar> &x) {
  const Scalar v1 = x.v(0), v2 = x.v(1), v3 = x.v(2);
  Mat3<Scalar> r;
  r << 0, v2 - v3, v2 + v3, //
      v3 - v2, 0, -2 * v1,  //
      v2 + v3, -2 * v1, 0;
  return r;
}

enum class Sl2Class { Hyperbolic, Parabolic, Elliptic, PlusMinusIdentity };

template <typename Scalar>
Sl2Class classify_sl2(const SL2<Scalar> &g,
                      Scalar tol = Scalar(kHyperbolicTol)) {
  using std::abs;
  const Mat2<Scalar> &m = g.matrix();
  const Mat2<Scalar> id = Mat2<Scalar>::Identity();
  if ((m - id).template lpNorm<Eigen::Infinity>() <= tol ||
      (m + id).template lpNorm<Eigen::Infinity>() <= tol)
    return Sl2Class::PlusMinusIdentity;
  const Scalar t = abs(g.trace());
  if (t > 2 + tol)
    return Sl2Class::Hyperbolic;
  if (t < 2 - tol)
    return Sl2Class::Elliptic;
  return Sl2Class::Parabolic;
}

template <typename Scalar> bool is_hyperbolic(const SL2<Scalar> &g) {
  using std::abs;
  return abs(g.trace()) > 2 + Scalar(kHyperbolicTol);
}

template <typename Scalar> void require_hyperbolic(const SL2<Scalar> &g) {
  if (!is_hyperbolic(g)) {
    std::ostringstream os;
    os << "element with trace " << double(g.trace()) << " is not hyperbolic";
    throw Error(ErrorCode::NotHyperbolic, os.str());
  }
}

/// sqrt(tr(g)^2 - 4), factored to avoid cancellation near |tr| = 2.
template <typename Scalar> Scalar trace_discriminant(Scalar tr) {
  using std::abs;
  using std::sqrt;
  const Scalar t = abs(tr);
  return sqrt((t - 2) * (t + 2));
}

/// Eigenvalue 0 < mu < 1 of +-g, computed as the reciprocal of the large
/// root.
template <typename Scalar> Scalar mu_of(const SL2<Scalar> &g) {
  using std::abs;
  require_hyperbolic(g);
  const Scalar t = abs(g.trace());
  return 2 / (t + trace_discriminant(t));
}

template <typename Scalar> SL2<Scalar> exp_sl2(const Sl2Vec<Scalar> &x) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  const Scalar k2 = -x.det();
  const Mat2<Scalar> id = Mat2<Scalar>::Identity();
  if (k2 > 0) {
    const Scalar k = sqrt(k2);
    return SL2<Scalar>::unchecked(cosh(k) * id + (sinh(k) / k) * x.matrix());
  }
  if (k2 < 0) {
    const Scalar k = sqrt(-k2);
    return SL2<Scalar>::unchecked(cos(k) * id + (sin(k) / k) * x.matrix());
  }
  return SL2<Scalar>::unchecked(id + x.matrix());
}

/// Logarithm of a hyperbolic element with positive trace. Callers holding
/// an element with tr < -2 pass -g instead.
template <typename Scalar> Sl2Vec<Scalar> log_hyperbolic(const SL2<Scalar> &g) {
  using std::acosh;
  require_hyperbolic(g);
  const Scalar half = g.trace() / 2;
  if (half < 0)
    throw Error(ErrorCode::NegativeTrace,
                "log_hyperbolic needs tr > 2; pass the negated element");
  const Scalar scale = acosh(half) / (trace_discriminant(g.trace()) / 2);
  const Mat2<Scalar> centred = g.matrix() - half * Mat2<Scalar>::Identity();
  return Sl2Vec<Scalar>::from_matrix(scale * centred);
}

/// x^0(g) = psi( sgn(tr g) (g - tr(g)/2 I) / (sqrt(tr(g)^2 - 4)/2) ).
template <typename Scalar> Vec21<Scalar> neutral_vector(const SL2<Scalar> &g) {
  require_hyperbolic(g);
  const Scalar tr = g.trace();
  const Scalar sgn = tr > 0 ? Scalar(1) : Scalar(-1);
  const Scalar denom = trace_discriminant(tr) / 2;
  const Mat2<Scalar> centred =
      g.matrix() - (tr / 2) * Mat2<Scalar>::Identity();
  return psi(Sl2Vec<Scalar>::from_matrix((sgn / denom) * centred));
}

template <typename Scalar> struct Eigenframe {
  Vec21<Scalar> xminus;
  Vec21<Scalar> xplus;
  Vec21<Scalar> xzero;
  Scalar lambda;
  Scalar mu;
};

namespace detail {

// Eigenvector of a 2x2 matrix for eigenvalue e, taking whichever of the two
// row-derived candidates is better conditioned.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> eigvec2(const Mat2<Scalar> &m, Scalar e) {
  const Eigen::Matrix<Scalar, 2, 1> first(m(0, 1), e - m(0, 0));
  const Eigen::Matrix<Scalar, 2, 1> second(e - m(1, 1), m(1, 0));
  return first.squaredNorm() >= second.squaredNorm() ? first : second;
}

} // namespace detail

/// Null eigenvectors x^-(g), x^+(g) in N_+ (scaled to third coordinate 1)
/// for the eigenvalues mu^2 and mu^-2 of rho(g), and the neutral vector
/// x^0(g). Obtained by diagonalising g as F diag(s mu, s/mu) F^{-1} and
/// transporting the frame of the diagonal element by rho(F).
template <typename Scalar> Eigenframe<Scalar> eigenframe(const SL2<Scalar> &g) {
  using std::sqrt;
  const Scalar mu = mu_of(g);
  const Scalar sgn = g.trace() > 0 ? Scalar(1) : Scalar(-1);
  Mat2<Scalar> f;
  f.col(0) = detail::eigvec2(g.matrix(), sgn * mu);
  f.col(1) = detail::eigvec2(g.matrix(), sgn / mu);
  Scalar det = f.determinant();
  if (det < 0) {
    f.col(1) = -f.col(1);
    det = -det;
  }
  f /= sqrt(det);
  const Mat3<Scalar> r = rho(SL2<Scalar>::unchecked(f));

  Eigenframe<Scalar> frame;
  frame.xminus = r * Vec21<Scalar>(0, -1, 1);
  frame.xplus = r * Vec21<Scalar>(0, 1, 1);
  frame.xzero = r * Vec21<Scalar>(-1, 0, 0);
  frame.xminus /= frame.xminus(2);
  frame.xplus /= frame.xplus(2);
  frame.mu = mu;
  frame.lambda = mu * mu;
  return frame;
}

/// l(g) = 2 arccosh(|tr g| / 2) = -2 log mu.
template <typename Scalar> Scalar displacement_length(const SL2<Scalar> &g) {
  using std::abs;
  using std::acosh;
  require_hyperbolic(g);
  return 2 * acosh(abs(g.trace()) / 2);
}

} // namespace margulis
