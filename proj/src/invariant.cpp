#include "margulis/invariant.hpp"

namespace margulis {

const char *to_string(Verdict v) noexcept {
  switch (v) {
  case Verdict::NotProper:
    return "NotProper";
  case Verdict::ConsistentWithProper:
    return "ConsistentWithProper";
  case Verdict::ZeroDetected:
    return "ZeroDetected";
  }
  return "Unknown";
}

namespace {

// Prefer the smaller value; on ties prefer the shortlex-smaller word.
bool improves(double candidate, std::span<const Letter> cw, double best,
              const Word &bw, bool want_min, bool have_best) {
  if (!have_best)
    return true;
  if (candidate != best)
    return want_min ? candidate < best : candidate > best;
  return reduce(cw) < bw;
}

} // namespace

void SignScanReport::observe(std::span<const Letter> w, double alpha,
                             double zero_tol, std::size_t max_zero_words) {
  const bool first = count == 0;
  ++count;
  if (improves(alpha, w, min_alpha, argmin_word, true, !first)) {
    min_alpha = alpha;
    argmin_word = reduce(w);
  }
  if (improves(alpha, w, max_alpha, argmax_word, false, !first)) {
    max_alpha = alpha;
    argmax_word = reduce(w);
  }
  const double len1 = 1.0 + static_cast<double>(w.size());
  max_scaled_abs_alpha = std::max(max_scaled_abs_alpha, std::abs(alpha) / len1);
  const double band = zero_tol * len1;
  if (std::abs(alpha) <= band) {
    ++zero_count;
    if (zero_words.size() < max_zero_words)
      zero_words.push_back(reduce(w));
  } else if (alpha > 0) {
    has_positive = true;
  } else {
    has_negative = true;
  }
}

void SignScanReport::merge(const SignScanReport &other,
                           std::size_t max_zero_words) {
  if (other.count > 0) {
    if (improves(other.min_alpha, other.argmin_word.letters(), min_alpha,
                 argmin_word, true, count > 0)) {
      min_alpha = other.min_alpha;
      argmin_word = other.argmin_word;
    }
    if (improves(other.max_alpha, other.argmax_word.letters(), max_alpha,
                 argmax_word, false, count > 0)) {
      max_alpha = other.max_alpha;
      argmax_word = other.argmax_word;
    }
  }
  count += other.count;
  near_parabolic += other.near_parabolic;
  trivial += other.trivial;
  has_positive = has_positive || other.has_positive;
  has_negative = has_negative || other.has_negative;
  zero_count += other.zero_count;
  max_scaled_abs_alpha = std::max(max_scaled_abs_alpha, other.max_scaled_abs_alpha);
  zero_words.insert(zero_words.end(), other.zero_words.begin(),
                    other.zero_words.end());
  std::sort(zero_words.begin(), zero_words.end());
  if (zero_words.size() > max_zero_words)
    zero_words.resize(max_zero_words);
}

void SignScanReport::finalize() {
  std::sort(zero_words.begin(), zero_words.end());
  if (has_positive && has_negative)
    verdict = Verdict::NotProper;
  else if (zero_count > 0)
    verdict = Verdict::ZeroDetected;
  else
    verdict = Verdict::ConsistentWithProper;
}

} // namespace margulis
