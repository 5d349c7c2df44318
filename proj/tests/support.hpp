#pragma once

// Random inputs shared by the test binaries.

#include "margulis/deform.hpp"
#include "margulis/rng.hpp"
#include "margulis/words.hpp"

#include <cstdint>
#include <vector>

namespace margulis::testing {

inline Vec21d random_vec(NormalStream &rng) {
  const double x = rng.normal(), y = rng.normal(), z = rng.normal();
  return {x, y, z};
}

inline Sl2Vecd random_sl2vec(NormalStream &rng) {
  const double x = rng.normal(), y = rng.normal(), z = rng.normal();
  return {x, y, z};
}

/// A product of two exponentials, which reaches all of SL(2,R) up to sign
/// with entries of moderate size. Negated half of the time.
inline SL2d random_sl2(NormalStream &rng) {
  const SL2d g = exp_sl2(random_sl2vec(rng)) * exp_sl2(random_sl2vec(rng));
  return rng.uniform() < 0.5 ? g : -g;
}

inline SL2d random_hyperbolic(NormalStream &rng) {
  for (;;) {
    const SL2d g = random_sl2(rng);
    if (std::abs(g.trace()) > 2.1)
      return g;
  }
}

inline Word random_word(NormalStream &rng, int rank, int max_length) {
  const int len = 1 + static_cast<int>(rng.next_u64() % max_length);
  std::vector<Letter> letters;
  while (static_cast<int>(letters.size()) < len) {
    const Letter l = letter_from_code(static_cast<int>(rng.next_u64() % (2 * rank)));
    if (!letters.empty() && letters.back().cancels(l))
      continue;
    letters.push_back(l);
  }
  return reduce(letters);
}

inline double rel_err(double expected, double actual) {
  return std::abs(expected - actual) / std::max(1.0, std::abs(expected));
}

} // namespace margulis::testing
