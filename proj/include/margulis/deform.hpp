#pragma once

// Representations of finitely generated groups into SL(2,R), R^{2,1}-valued
// cocycles for the action through rho, coboundaries, and the cocycle space
// Z^1 of a group with relators computed as a numerical kernel.
//
// Cocycle rule:  u(g h) = u(g) + rho(g) u(h),  u(g^-1) = -rho(g^-1) u(g).

#include "margulis/error.hpp"
#include "margulis/lorentz.hpp"
#include "margulis/rng.hpp"
#include "margulis/sl2.hpp"
#include "margulis/words.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace margulis {

/// Relators must evaluate to +-I within this tolerance.
inline constexpr double kRelatorTol = 1e-8;
/// Relative singular values above this are rank, below kKernelTol kernel.
inline constexpr double kRankTol = 1e-6;
inline constexpr double kKernelTol = 1e-9;

template <typename Scalar> using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar> struct Representation {
  std::vector<SL2<Scalar>> gens;
  std::vector<Word> relators;

  int rank() const { return static_cast<int>(gens.size()); }
  std::span<const SL2<Scalar>> span() const { return gens; }
};

template <typename Scalar> struct Cocycle {
  std::vector<Vec21<Scalar>> values;

  int rank() const { return static_cast<int>(values.size()); }

  /// (u(g_1), ..., u(g_r)) stacked into one 3r-vector.
  VecX<Scalar> flat() const {
    VecX<Scalar> out(3 * values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      out.template segment<3>(3 * i) = values[i];
    return out;
  }

  static Cocycle from_flat(const VecX<Scalar> &v) {
    Cocycle c;
    c.values.resize(v.size() / 3);
    for (std::size_t i = 0; i < c.values.size(); ++i)
      c.values[i] = v.template segment<3>(3 * i);
    return c;
  }

  Cocycle operator-() const { return from_flat(-flat()); }
};

template <typename Scalar> struct AffineDeformation {
  Representation<Scalar> rep;
  Cocycle<Scalar> cocycle;

  AffineDeformation(Representation<Scalar> r, Cocycle<Scalar> c)
      : rep(std::move(r)), cocycle(std::move(c)) {
    if (rep.rank() != cocycle.rank())
      throw Error(ErrorCode::InvalidArgument,
                  "cocycle has " + std::to_string(cocycle.rank()) +
                      " values for " + std::to_string(rep.rank()) +
                      " generators");
  }
};

using MatXd = MatX<double>;
using VecXd = VecX<double>;
using Representationd = Representation<double>;
using Cocycled = Cocycle<double>;
using AffineDeformationd = AffineDeformation<double>;

/// Linear part and translation part of the affine map of a word.
template <typename Scalar> struct AffineElement {
  SL2<Scalar> linear;
  Vec21<Scalar> translation;
};

template <typename Scalar>
AffineElement<Scalar> evaluate_affine(const AffineDeformation<Scalar> &d,
                                      std::span<const Letter> w) {
  AffineElement<Scalar> out{SL2<Scalar>(), Vec21<Scalar>::Zero()};
  for (const Letter &l : w) {
    if (l.gen >= d.rep.gens.size())
      throw Error(ErrorCode::IndexOutOfRange,
                  "word uses generator " + std::to_string(l.gen) +
                      " but only " + std::to_string(d.rep.gens.size()) +
                      " are defined");
    const SL2<Scalar> &g = d.rep.gens[l.gen];
    const Vec21<Scalar> &u = d.cocycle.values[l.gen];
    if (l.sign > 0) {
      out.translation += rho(out.linear) * u;
      out.linear *= g;
    } else {
      out.linear *= g.inverse();
      out.translation -= rho(out.linear) * u;
    }
  }
  return out;
}

template <typename Scalar>
Vec21<Scalar> cocycle_eval(const AffineDeformation<Scalar> &d,
                           std::span<const Letter> w) {
  return evaluate_affine(d, w).translation;
}

template <typename Scalar>
Vec21<Scalar> cocycle_eval(const AffineDeformation<Scalar> &d,
                           const Word &w) {
  return cocycle_eval(d, w.letters());
}

/// delta v : g -> v - rho(g) v.
template <typename Scalar>
Cocycle<Scalar> coboundary(const Representation<Scalar> &rep,
                           const Vec21<Scalar> &v) {
  Cocycle<Scalar> c;
  c.values.reserve(rep.gens.size());
  for (const auto &g : rep.gens)
    c.values.push_back(v - rho(g) * v);
  return c;
}

/// x -> rho(g) x + u(g) for the word g.
template <typename Scalar>
Vec21<Scalar> affine_apply(const AffineDeformation<Scalar> &d, const Word &w,
                           const Vec21<Scalar> &x) {
  const auto e = evaluate_affine(d, w.letters());
  return rho(e.linear) * x + e.translation;
}

/// The 3 x 3r matrix sending (u(g_1), ..., u(g_r)) to u(relator).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, Eigen::Dynamic>
relator_constraint_matrix(const Representation<Scalar> &rep,
                          const Word &relator) {
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, 3, Eigen::Dynamic>::Zero(3, 3 * rep.rank());
  SL2<Scalar> prefix;
  for (const Letter &l : relator) {
    if (l.gen >= rep.gens.size())
      throw Error(ErrorCode::IndexOutOfRange,
                  "relator uses generator beyond the representation's rank");
    const SL2<Scalar> &g = rep.gens[l.gen];
    auto block = m.template middleCols<3>(3 * l.gen);
    if (l.sign > 0) {
      block += rho(prefix);
      prefix *= g;
    } else {
      prefix *= g.inverse();
      block -= rho(prefix);
    }
  }
  return m;
}

/// All relator constraints stacked into a 3m x 3r matrix.
template <typename Scalar>
MatX<Scalar> constraint_matrix(const Representation<Scalar> &rep) {
  MatX<Scalar> m(3 * rep.relators.size(), 3 * rep.rank());
  for (std::size_t i = 0; i < rep.relators.size(); ++i)
    m.middleRows(3 * i, 3) = relator_constraint_matrix(rep, rep.relators[i]);
  return m;
}

/// Z^1 as an orthonormal basis (columns of `basis`) together with the
/// singular values that determined it.
template <typename Scalar> struct CocycleSpace {
  MatX<Scalar> basis;
  VecX<Scalar> singular_values;
  int constraint_rank = 0;
  /// Smallest retained over largest discarded singular value (infinity when
  /// nothing was discarded or the discarded values are exactly zero).
  Scalar gap = std::numeric_limits<Scalar>::infinity();

  int dimension() const { return static_cast<int>(basis.cols()); }

  std::vector<Cocycle<Scalar>> cocycles() const {
    std::vector<Cocycle<Scalar>> out;
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
      out.push_back(Cocycle<Scalar>::from_flat(basis.col(j)));
    return out;
  }
};

template <typename Scalar>
CocycleSpace<Scalar> cocycle_space(const Representation<Scalar> &rep) {
  const int n = 3 * rep.rank();
  CocycleSpace<Scalar> space;
  if (rep.relators.empty()) {
    space.basis = MatX<Scalar>::Identity(n, n);
    return space;
  }
  const MatX<Scalar> m = constraint_matrix(rep);
  Eigen::JacobiSVD<MatX<Scalar>> svd(m, Eigen::ComputeFullV);
  const VecX<Scalar> s = svd.singularValues();
  space.singular_values = s;
  const Scalar top = s.size() > 0 ? s(0) : Scalar(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const Scalar rel = top > 0 ? s(i) / top : Scalar(0);
    if (rel > Scalar(kRankTol)) {
      ++rank;
    } else if (rel >= Scalar(kKernelTol)) {
      throw Error(ErrorCode::DegenerateRepresentation,
                  "singular value " + std::to_string(double(rel)) +
                      " (relative) lies between the kernel and rank "
                      "thresholds");
    }
  }
  space.constraint_rank = rank;
  if (rank > 0 && rank < s.size() && s(rank) > 0)
    space.gap = s(rank - 1) / s(rank);
  space.basis = svd.matrixV().rightCols(n - rank);
  return space;
}

template <typename Scalar>
std::vector<Cocycle<Scalar>> cocycle_basis(const Representation<Scalar> &rep) {
  return cocycle_space(rep).cocycles();
}

/// Columns are the flattened coboundaries of e1, e2, e3.
template <typename Scalar>
MatX<Scalar> coboundary_matrix(const Representation<Scalar> &rep) {
  MatX<Scalar> m(3 * rep.rank(), 3);
  for (int j = 0; j < 3; ++j)
    m.col(j) = coboundary(rep, Vec21<Scalar>(Vec21<Scalar>::Unit(j))).flat();
  return m;
}

/// Numerical rank of B^1. It is 3 unless the group fixes a nonzero vector.
template <typename Scalar>
int coboundary_rank(const Representation<Scalar> &rep) {
  const MatX<Scalar> b = coboundary_matrix(rep);
  Eigen::JacobiSVD<MatX<Scalar>> svd(b);
  const auto s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(0) > 0 && s(i) / s(0) > Scalar(kRankTol))
      ++rank;
  return rank;
}

/// Orthonormal basis of the part of Z^1 orthogonal to B^1, a slice of H^1.
template <typename Scalar>
MatX<Scalar> cohomology_complement(const Representation<Scalar> &rep) {
  const MatX<Scalar> z = cocycle_space(rep).basis;
  const MatX<Scalar> b = coboundary_matrix(rep);
  Eigen::JacobiSVD<MatX<Scalar>> bsvd(b, Eigen::ComputeThinU);
  const int brank = coboundary_rank(rep);
  const MatX<Scalar> q = bsvd.matrixU().leftCols(brank);
  const MatX<Scalar> residual = z - q * (q.transpose() * z);
  Eigen::JacobiSVD<MatX<Scalar>> rsvd(residual, Eigen::ComputeThinU);
  const auto s = rsvd.singularValues();
  int keep = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > Scalar(kRankTol))
      ++keep;
  return rsvd.matrixU().leftCols(keep);
}

/// Unit-norm Gaussian combination of the basis, deterministic in seed.
/// Coefficients that come out exactly zero are redrawn.
template <typename Scalar>
Cocycle<Scalar> random_cocycle(const std::vector<Cocycle<Scalar>> &basis,
                               std::uint64_t seed) {
  if (basis.empty())
    throw Error(ErrorCode::InvalidArgument, "random_cocycle needs a basis");
  NormalStream rng(seed);
  VecX<Scalar> sum = VecX<Scalar>::Zero(3 * basis.front().rank());
  for (const auto &c : basis) {
    double coeff = 0.0;
    while (coeff == 0.0)
      coeff = rng.normal();
    sum += Scalar(coeff) * c.flat();
  }
  return Cocycle<Scalar>::from_flat(sum / sum.norm());
}

template <typename Scalar>
Cocycle<Scalar> random_cocycle(const MatX<Scalar> &basis_columns,
                               std::uint64_t seed) {
  std::vector<Cocycle<Scalar>> basis;
  for (Eigen::Index j = 0; j < basis_columns.cols(); ++j)
    basis.push_back(Cocycle<Scalar>::from_flat(basis_columns.col(j)));
  return random_cocycle(basis, seed);
}

struct VerifyReport {
  int radius = 0;
  bool unimodular = true;
  bool relators_ok = true;
  bool purely_hyperbolic = true;
  double max_det_defect = 0.0;
  double max_relator_defect = 0.0;
  std::uint64_t words_checked = 0;
  /// Words equal to +-I, i.e. trivial in the group; skipped.
  std::uint64_t trivial_words = 0;
  double min_trace_margin = std::numeric_limits<double>::infinity();
  Word min_margin_word;
  double min_length = std::numeric_limits<double>::infinity();
  Word min_length_word;
  std::vector<std::string> violations;

  bool ok() const { return unimodular && relators_ok && purely_hyperbolic; }
};

/// Distance of g from the nearer of +I and -I, entrywise.
template <typename Scalar> Scalar sign_identity_defect(const SL2<Scalar> &g) {
  const Mat2<Scalar> id = Mat2<Scalar>::Identity();
  const Scalar plus = (g.matrix() - id).template lpNorm<Eigen::Infinity>();
  const Scalar minus = (g.matrix() + id).template lpNorm<Eigen::Infinity>();
  return std::min(plus, minus);
}

/// Words of the free group that are trivial in the group (relators and
/// their consequences) evaluate to +-I.
template <typename Scalar> bool is_trivial_element(const SL2<Scalar> &g) {
  return sign_identity_defect(g) <= Scalar(kRelatorTol);
}

template <typename Scalar>
VerifyReport verify_rep(const Representation<Scalar> &rep, int radius,
                        std::uint64_t max_words = kDefaultMaxWords) {
  using std::abs;
  if (radius < 1)
    throw Error(ErrorCode::InvalidArgument, "verify_rep needs radius >= 1");
  VerifyReport report;
  report.radius = radius;
  for (int i = 0; i < rep.rank(); ++i) {
    const double defect = double(abs(rep.gens[i].det() - Scalar(1)));
    report.max_det_defect = std::max(report.max_det_defect, defect);
    if (defect > kDefaultTol) {
      report.unimodular = false;
      report.violations.push_back("generator " + std::to_string(i) +
                                  " has determinant defect " +
                                  std::to_string(defect));
    }
  }
  for (const Word &r : rep.relators) {
    const double defect =
        double(sign_identity_defect(evaluate<Scalar>(r.letters(), rep.span())));
    report.max_relator_defect = std::max(report.max_relator_defect, defect);
    if (defect > kRelatorTol) {
      report.relators_ok = false;
      report.violations.push_back("relator " + to_string(r) +
                                  " is not +-I (defect " +
                                  std::to_string(defect) + ")");
    }
  }
  EnumerationOptions opts;
  opts.max_length = radius;
  opts.max_words = max_words;
  for_each_conjugacy_rep(rep.rank(), opts, [&](std::span<const Letter> w) {
    const SL2<Scalar> g = evaluate<Scalar>(w, rep.span());
    if (!rep.relators.empty() && is_trivial_element(g)) {
      ++report.trivial_words;
      return;
    }
    const double margin = double(abs(g.trace())) - 2.0;
    ++report.words_checked;
    if (margin < report.min_trace_margin) {
      report.min_trace_margin = margin;
      report.min_margin_word = reduce(w);
    }
    if (!is_hyperbolic(g)) {
      if (report.purely_hyperbolic || report.violations.size() < 32)
        report.violations.push_back("word " + to_string(w) +
                                    " is not hyperbolic (trace " +
                                    std::to_string(double(g.trace())) + ")");
      report.purely_hyperbolic = false;
      return;
    }
    const double len = double(displacement_length(g));
    if (len < report.min_length) {
      report.min_length = len;
      report.min_length_word = reduce(w);
    }
  });
  return report;
}

/// Throws if the representation fails verification at the given radius.
template <typename Scalar>
void require_valid(const Representation<Scalar> &rep, int radius) {
  const VerifyReport report = verify_rep(rep, radius);
  if (!report.ok())
    throw Error(report.purely_hyperbolic ? ErrorCode::InvalidArgument
                                         : ErrorCode::NotHyperbolic,
                "representation failed verification: " +
                    report.violations.front());
}

// ---------------------------------------------------------------------------
// Preset constructions.

/// Elliptic element rotating the upper half plane by `angle` about i.
template <typename Scalar> SL2<Scalar> rotation_about_i(Scalar angle) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(angle / 2), s = sin(angle / 2);
  return SL2<Scalar>::unchecked((Mat2<Scalar>() << c, s, -s, c).finished());
}

/// Translation of length `length` along the geodesic through i leaving in
/// direction `angle` (angle 0: the imaginary axis, moving up).
template <typename Scalar>
SL2<Scalar> translation_through_i(Scalar length, Scalar angle) {
  using std::exp;
  const SL2<Scalar> boost = SL2<Scalar>::unchecked(
      (Mat2<Scalar>() << exp(length / 2), 0, 0, exp(-length / 2)).finished());
  const SL2<Scalar> r = rotation_about_i(angle);
  return r * boost * r.inverse();
}

template <typename Scalar> Representation<Scalar> cyclic_preset(Scalar mu) {
  if (!(mu > 0 && mu < 1))
    throw Error(ErrorCode::InvalidArgument, "cyclic preset needs 0 < mu < 1");
  Representation<Scalar> rep;
  rep.gens.push_back(SL2<Scalar>(mu, 0, 0, 1 / mu));
  return rep;
}

/// Two boosts diag(e^s, e^-s) whose axes cross at right angles at i.
template <typename Scalar> Representation<Scalar> schottky_preset(Scalar s) {
  using std::exp;
  if (!(s > 0))
    throw Error(ErrorCode::InvalidArgument, "schottky preset needs s > 0");
  Representation<Scalar> rep;
  const SL2<Scalar> a(exp(s), 0, 0, exp(-s));
  const SL2<Scalar> quarter = rotation_about_i(std::numbers::pi_v<Scalar> / 2);
  rep.gens.push_back(a);
  rep.gens.push_back(quarter * a * quarter.inverse());
  return rep;
}

inline constexpr const char *kGenus2Relator = "abcdABCD";

/// Generator k translates by `length` along the axis through i at angle
/// k pi/4, oriented alternately (direction angle 5k pi/4), which makes the
/// opposite-side octagon pairing satisfy abcdABCD = +-I at the right length.
template <typename Scalar> Representation<Scalar> genus2_at(Scalar length) {
  Representation<Scalar> rep;
  for (int k = 0; k < 4; ++k)
    rep.gens.push_back(translation_through_i(
        length, Scalar(5 * k) * std::numbers::pi_v<Scalar> / 4));
  rep.relators.push_back(parse_word(kGenus2Relator));
  return rep;
}

/// Bisection on the upper-right entry of the relator, which changes sign at
/// the length where the octagon closes up.
template <typename Scalar> Scalar calibrate_genus2_length() {
  const Word relator = parse_word(kGenus2Relator);
  const auto entry = [&](Scalar len) {
    const auto rep = genus2_at(len);
    return evaluate<Scalar>(relator.letters(), rep.span()).b();
  };
  Scalar lo = Scalar(2.9), hi = Scalar(3.2);
  Scalar flo = entry(lo);
  for (int it = 0; it < 200 && hi - lo > std::numeric_limits<Scalar>::epsilon() * 4;
       ++it) {
    const Scalar mid = (lo + hi) / 2;
    const Scalar fmid = entry(mid);
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

template <typename Scalar> Representation<Scalar> genus2_preset() {
  return genus2_at(calibrate_genus2_length<Scalar>());
}

} // namespace margulis
