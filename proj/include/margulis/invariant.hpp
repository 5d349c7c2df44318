#pragma once

// The Margulis invariant
//   alpha(g) = B(x^0(g), u(g)),
// computed either from the eigenframe of g or from the trace formula
//   alpha(g) = sgn(tr g) tr(u(g) g) / sqrt(tr(g)^2 - 4)
// with u(g) read as a traceless matrix through psi^-1. Mixed signs of alpha
// over a group rule out a proper affine action.

#include "margulis/deform.hpp"
#include "margulis/error.hpp"
#include "margulis/sl2.hpp"
#include "margulis/words.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <exception>
#include <span>
#include <optional>
#include <thread>
#include <vector>

namespace margulis {

/// Words with |tr| - 2 below this are skipped by scans.
inline constexpr double kNearParabolic = 1e-6;
/// Zero band for alpha is kZeroTol * (1 + word length).
inline constexpr double kZeroTol = 1e-9;
inline constexpr double kDefaultStep = 1e-4;

/// The trace formula applied directly to a pair (g, u(g)).
template <typename Scalar>
Scalar alpha_from_trace(const SL2<Scalar> &g, const Vec21<Scalar> &u) {
  require_hyperbolic(g);
  const Scalar tr = g.trace();
  const Scalar sgn = tr > 0 ? Scalar(1) : Scalar(-1);
  const Scalar num = (psi_inv(u).matrix() * g.matrix()).trace();
  return sgn * num / trace_discriminant(tr);
}

namespace detail {

// Working precision of the rotation sums: extended for double input, since
// rotations of words that are not cyclically reduced have large entries and
// their terms cancel.
template <typename Scalar> struct WorkScalar {
  using type = Scalar;
};
template <> struct WorkScalar<double> {
  using type = long double;
};

// With u(g) = sum_i rho(p_i) u_i (p_i the prefix carrying letter i) and B
// invariant under rho, B(x^0(g), u(g)) = sum_i B(x^0(p_i^-1 g p_i), u_i),
// where p_i^-1 g p_i is a cyclic rotation of the word. For cyclically
// reduced words each term is O(1), whereas u(g) itself grows like the norm
// of rho(g) and cancels in B.
// `term(rotation, u_letter)` is summed with the sign of each letter.
template <typename Scalar, typename Term>
Scalar sum_over_rotations(const AffineDeformation<Scalar> &d,
                          std::span<const Letter> w, SL2<Scalar> &g_out,
                          Term &&term) {
  using Work = typename WorkScalar<Scalar>::type;
  const std::size_t n = w.size();
  std::vector<SL2<Work>> mats(n), prefix(n + 1), suffix(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].gen >= d.rep.gens.size())
      throw Error(ErrorCode::IndexOutOfRange,
                  "word uses generator " + std::to_string(w[i].gen) +
                      " but only " + std::to_string(d.rep.gens.size()) +
                      " are defined");
    const SL2<Work> g = SL2<Work>::unchecked(
        d.rep.gens[w[i].gen].matrix().template cast<Work>());
    mats[i] = w[i].sign > 0 ? g : g.inverse();
  }
  for (std::size_t i = 0; i < n; ++i)
    prefix[i + 1] = prefix[i] * mats[i];
  for (std::size_t i = n; i-- > 0;)
    suffix[i] = mats[i] * suffix[i + 1];
  g_out = SL2<Scalar>::unchecked(prefix[n].matrix().template cast<Scalar>());
  require_hyperbolic(g_out);

  Work sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec21<Work> u = d.cocycle.values[w[i].gen].template cast<Work>();
    // A positive letter is carried by p_i, an inverse letter by p_{i+1}.
    const std::size_t k = w[i].sign > 0 ? i : i + 1;
    const SL2<Work> rotation = suffix[k] * prefix[k];
    const Work t = term(rotation, u);
    sum += w[i].sign > 0 ? t : -t;
  }
  return Scalar(sum);
}

} // namespace detail

/// alpha(g) = sgn(tr g) tr(u(g) g) / sqrt(tr(g)^2 - 4), with tr(u(g) g)
/// expanded letter by letter over cyclic rotations of the word.
template <typename Scalar>
Scalar alpha_trace(const AffineDeformation<Scalar> &d,
                   std::span<const Letter> w) {
  SL2<Scalar> g;
  const Scalar num = detail::sum_over_rotations(
      d, w, g, [](const auto &rot, const auto &u) {
        return (psi_inv(u).matrix() * rot.matrix()).trace();
      });
  const Scalar tr = g.trace();
  const Scalar sgn = tr > 0 ? Scalar(1) : Scalar(-1);
  return sgn * num / trace_discriminant(tr);
}

template <typename Scalar>
Scalar alpha_trace(const AffineDeformation<Scalar> &d, const Word &w) {
  return alpha_trace(d, w.letters());
}

/// alpha(g) = B(x^0(g), u(g)) with every neutral vector taken from the
/// diagonalised eigenframe rather than the trace formula.
template <typename Scalar>
Scalar alpha_eig(const AffineDeformation<Scalar> &d,
                 std::span<const Letter> w) {
  SL2<Scalar> g;
  return detail::sum_over_rotations(
      d, w, g, [](const auto &rot, const auto &u) {
        return bform(eigenframe(rot).xzero, u);
      });
}

template <typename Scalar>
Scalar alpha_eig(const AffineDeformation<Scalar> &d, const Word &w) {
  return alpha_eig(d, w.letters());
}

// ---------------------------------------------------------------------------
// Class function, homogeneity and inversion checks.

struct PropertyViolation {
  std::string kind;
  Word word;
  Word conjugator;
  double expected = 0.0;
  double actual = 0.0;
};

struct PropertiesReport {
  int radius = 0;
  double tol = 0.0;
  std::uint64_t checks = 0;
  std::uint64_t skipped = 0;
  double max_conjugation_error = 0.0;
  double max_power_error = 0.0;
  double max_inverse_error = 0.0;
  std::vector<PropertyViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Compares alpha(h g h^-1), alpha(g^2)/2, alpha(g^3)/3 and alpha(g^-1) with
/// alpha(g) for every g in the ball of the given radius and every h among
/// the generators, their inverses and `extra_conjugators`. The error
/// allowed is tol * (1 + |alpha(g^n)|), i.e. relative for large values.
template <typename Scalar>
PropertiesReport
alpha_properties_check(const AffineDeformation<Scalar> &d, int radius,
                       double tol = kZeroTol,
                       const std::vector<Word> &extra_conjugators = {}) {
  using std::abs;
  if (radius < 2)
    throw Error(ErrorCode::InvalidArgument,
                "alpha_properties_check needs radius >= 2");
  PropertiesReport report;
  report.radius = radius;
  report.tol = tol;

  std::vector<Word> conjugators = extra_conjugators;
  for (int i = 0; i < d.rep.rank(); ++i) {
    conjugators.push_back(Word::generator(i, 1));
    conjugators.push_back(Word::generator(i, -1));
  }

  const auto record = [&](const char *kind, const Word &w, const Word &h,
                          double expected, double actual, double scale,
                          double &max_err) {
    const double err = std::abs(expected - actual) / (1.0 + scale);
    max_err = std::max(max_err, err);
    ++report.checks;
    if (err > tol)
      report.violations.push_back({kind, w, h, expected, actual});
  };

  EnumerationOptions opts;
  opts.max_length = radius;
  for_each_reduced_word(d.rep.rank(), opts, [&](std::span<const Letter> span) {
    const Word w = reduce(span);
    const SL2<Scalar> g = evaluate<Scalar>(w.letters(), d.rep.span());
    if (abs(g.trace()) - 2 < Scalar(kNearParabolic)) {
      ++report.skipped;
      return;
    }
    const double a = double(alpha_trace(d, w));
    for (const Word &h : conjugators) {
      const Word c = multiply(multiply(h, w), invert(h));
      const double ac = double(alpha_trace(d, c));
      record("conjugation", w, h, a, ac, std::abs(ac), report.max_conjugation_error);
    }
    for (int n = 2; n <= 3; ++n) {
      const double an = double(alpha_trace(d, power(w, n)));
      record(n == 2 ? "square" : "cube", w, Word(), n * a, an, std::abs(an),
             report.max_power_error);
    }
    const double ainv = double(alpha_trace(d, invert(w)));
    record("inverse", w, Word(), a, ainv, std::abs(ainv),
           report.max_inverse_error);
  });
  return report;
}

// ---------------------------------------------------------------------------
// Sign scans.

enum class Verdict { NotProper, ConsistentWithProper, ZeroDetected };

const char *to_string(Verdict v) noexcept;

struct ScanOptions {
  int min_length = 1;
  int max_length = 1;
  double zero_tol = kZeroTol;
  std::uint64_t max_words = kDefaultMaxWords;
  std::size_t max_zero_words = 64;
  int workers = 1;
};

struct SignScanReport {
  int radius = 0;
  std::uint64_t count = 0;
  std::uint64_t near_parabolic = 0;
  /// Words trivial in the group (evaluating to +-I); skipped.
  std::uint64_t trivial = 0;
  double min_alpha = std::numeric_limits<double>::infinity();
  double max_alpha = -std::numeric_limits<double>::infinity();
  Word argmin_word;
  Word argmax_word;
  bool has_positive = false;
  bool has_negative = false;
  std::uint64_t zero_count = 0;
  /// The first zero words in shortlex order, at most max_zero_words.
  std::vector<Word> zero_words;
  /// max over scanned words of |alpha| / (1 + length).
  double max_scaled_abs_alpha = 0.0;
  Verdict verdict = Verdict::ConsistentWithProper;

  void observe(std::span<const Letter> w, double alpha, double zero_tol,
               std::size_t max_zero_words);
  void merge(const SignScanReport &other, std::size_t max_zero_words);
  void finalize();
};

/// Alpha over one conjugacy representative per class with cyclically reduced
/// length in [min_length, max_length]. The scan is split across workers by
/// first letter; merging is order-independent, so the report does not
/// depend on the worker count.
template <typename Scalar>
SignScanReport sign_scan(const AffineDeformation<Scalar> &d,
                         const ScanOptions &opts) {
  using std::abs;
  if (opts.max_length < 1)
    throw Error(ErrorCode::InvalidArgument, "sign_scan needs radius >= 1");
  const int rank = d.rep.rank();
  const int ncodes = 2 * rank;
  const int workers = std::clamp(opts.workers, 1, ncodes);

  EnumerationOptions base;
  base.min_length = opts.min_length;
  base.max_length = opts.max_length;
  base.max_words = opts.max_words;

  std::vector<SignScanReport> partial(ncodes);
  const auto run_code = [&](int code) {
    EnumerationOptions eo = base;
    eo.first_code = code;
    SignScanReport &rep = partial[code];
    for_each_conjugacy_rep(rank, eo, [&](std::span<const Letter> w) {
      const SL2<Scalar> g = evaluate<Scalar>(w, d.rep.span());
      if (is_trivial_element(g)) {
        ++rep.trivial;
        return;
      }
      if (abs(g.trace()) - 2 < Scalar(kNearParabolic)) {
        ++rep.near_parabolic;
        return;
      }
      rep.observe(w, double(alpha_trace(d, w)), opts.zero_tol,
                  opts.max_zero_words);
    });
  };

  if (workers == 1) {
    for (int code = 0; code < ncodes; ++code)
      run_code(code);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        try {
          for (int code = t; code < ncodes; code += workers)
            run_code(code);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto &th : pool)
      th.join();
    for (auto &err : errors)
      if (err)
        std::rethrow_exception(err);
  }

  SignScanReport out;
  for (const auto &p : partial)
    out.merge(p, opts.max_zero_words);
  out.radius = opts.max_length;
  out.finalize();
  return out;
}

template <typename Scalar>
SignScanReport sign_scan(const AffineDeformation<Scalar> &d, int radius,
                         double zero_tol = kZeroTol) {
  ScanOptions opts;
  opts.max_length = radius;
  opts.zero_tol = zero_tol;
  return sign_scan(d, opts);
}

// ---------------------------------------------------------------------------
// Deformation paths.

/// Generator i goes to exp(t U_i) g_i with U_i = psi^-1(u_i); equivalently
/// g_i exp(t Ad(g_i^-1) U_i). Left translation makes the path tangent to u
/// under the cocycle rule u(gh) = u(g) + rho(g) u(h) for every word.
template <typename Scalar>
Representation<Scalar> path_representation(const AffineDeformation<Scalar> &d,
                                           Scalar t) {
  Representation<Scalar> out;
  out.relators = d.rep.relators;
  out.gens.reserve(d.rep.gens.size());
  for (std::size_t i = 0; i < d.rep.gens.size(); ++i)
    out.gens.push_back(exp_sl2(t * psi_inv(d.cocycle.values[i])) *
                       d.rep.gens[i]);
  return out;
}

template <typename Scalar> struct TauLength {
  Scalar tau;
  Scalar length;
};

/// (|tr|, 2 arccosh(|tr|/2)) of the word under the deformed representation.
template <typename Scalar>
TauLength<Scalar> tau_and_length(const Representation<Scalar> &rep_t,
                                 std::span<const Letter> w) {
  using std::abs;
  const SL2<Scalar> g = evaluate<Scalar>(w, rep_t.span());
  if (!is_hyperbolic(g))
    throw Error(ErrorCode::NotHyperbolic,
                "word " + to_string(w) +
                    " left the hyperbolic locus along the path (trace " +
                    std::to_string(double(g.trace())) + ")");
  return {abs(g.trace()), displacement_length(g)};
}

template <typename Scalar> struct PathProbe {
  Word word;
  Scalar alpha = 0;
  Scalar step = 0;
  Scalar tau_prime_fd = 0;
  Scalar length_prime_fd = 0;
  /// Richardson combination (4 D(h/2) - D(h)) / 3 of central differences.
  Scalar tau_prime_richardson = 0;
  Scalar length_prime_richardson = 0;
  /// Whether |alpha| > 10 h^2, the regime where the sign is asserted.
  bool sign_checked = false;
  bool sign_agrees = true;

  Scalar ratio() const { return length_prime_fd / alpha; }
  Scalar ratio_richardson() const { return length_prime_richardson / alpha; }
};

template <typename Scalar>
PathProbe<Scalar> lemma1_probe(const AffineDeformation<Scalar> &d,
                               const Word &w, Scalar h = Scalar(kDefaultStep)) {
  if (!(h > 0))
    throw Error(ErrorCode::InvalidArgument, "step h must be positive");
  const auto at = [&](Scalar t) {
    return tau_and_length(path_representation(d, t), w.letters());
  };
  const auto central = [&](Scalar step) {
    const auto plus = at(step), minus = at(-step);
    return std::pair{(plus.tau - minus.tau) / (2 * step),
                     (plus.length - minus.length) / (2 * step)};
  };
  at(Scalar(0));

  PathProbe<Scalar> probe;
  probe.word = w;
  probe.step = h;
  probe.alpha = alpha_trace(d, w);
  const auto [tau_h, len_h] = central(h);
  const auto [tau_h2, len_h2] = central(h / 2);
  probe.tau_prime_fd = tau_h;
  probe.length_prime_fd = len_h;
  probe.tau_prime_richardson = (4 * tau_h2 - tau_h) / 3;
  probe.length_prime_richardson = (4 * len_h2 - len_h) / 3;
  using std::abs;
  probe.sign_checked = abs(probe.alpha) > 10 * h * h;
  if (probe.sign_checked)
    probe.sign_agrees = (probe.tau_prime_fd > 0) == (probe.alpha > 0);
  return probe;
}

} // namespace margulis
