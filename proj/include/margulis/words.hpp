#pragma once

// Words in a free group of finite rank. Generator i is written as the i-th
// lowercase letter and its inverse as the matching uppercase letter, so
// "abAB" is the commutator a b a^-1 b^-1.

#include "margulis/error.hpp"
#include "margulis/sl2.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace margulis {

struct Letter {
  std::uint16_t gen = 0;
  std::int8_t sign = 1;

  /// Total order used everywhere: a < A < b < B < ...
  int code() const { return 2 * gen + (sign < 0 ? 1 : 0); }
  Letter inverse() const { return {gen, static_cast<std::int8_t>(-sign)}; }
  bool cancels(const Letter &other) const {
    return gen == other.gen && sign == -other.sign;
  }

  friend bool operator==(const Letter &, const Letter &) = default;
  friend std::strong_ordering operator<=>(const Letter &x, const Letter &y) {
    return x.code() <=> y.code();
  }
};

inline Letter letter_from_code(int code) {
  return {static_cast<std::uint16_t>(code / 2),
          static_cast<std::int8_t>(code % 2 == 0 ? 1 : -1)};
}

/// A freely reduced word. The only ways to build one go through reduce(),
/// so no adjacent pair of letters cancels.
class Word {
public:
  Word() = default;

  static Word generator(int gen, int sign = 1);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter &operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend bool operator==(const Word &, const Word &) = default;

  /// Shortlex: shorter words first, then lexicographic in Letter order.
  friend std::strong_ordering operator<=>(const Word &x, const Word &y);

  friend Word reduce(std::span<const Letter> letters);

private:
  std::vector<Letter> letters_;
};

Word reduce(std::span<const Letter> letters);
Word multiply(const Word &x, const Word &y);
Word invert(const Word &w);
Word power(const Word &w, int n);
/// Strips matching first/last letter pairs; the result is conjugate to w.
Word cyclic_reduce(const Word &w);
bool is_cyclically_reduced(std::span<const Letter> w);
/// The lexicographically least cyclic rotation of w.
Word least_rotation(const Word &w);
bool is_least_rotation(std::span<const Letter> w);
/// Canonical conjugacy representative: least rotation of the cyclic reduction.
Word conjugacy_canonical(const Word &w);

/// Largest generator index plus one, or 0 for the empty word.
int max_rank(const Word &w);

Word parse_word(std::string_view text);
std::string to_string(std::span<const Letter> w);
inline std::string to_string(const Word &w) { return to_string(w.letters()); }

inline constexpr std::uint64_t kDefaultMaxWords = 10'000'000;

/// Number of nonempty reduced words of length <= radius, saturating at
/// UINT64_MAX.
std::uint64_t ball_count(int rank, int radius);
/// Number of cyclically reduced words of length exactly k (k >= 1).
std::uint64_t cyclically_reduced_count(int rank, int k);

using LetterVisitor = std::function<void(std::span<const Letter>)>;

struct EnumerationOptions {
  int min_length = 1;
  int max_length = 1;
  std::uint64_t max_words = kDefaultMaxWords;
  /// When >= 0 only words whose first letter has this code are visited.
  int first_code = -1;
};

/// Visits every reduced word with length in [min_length, max_length] in
/// shortlex order. Throws ResourceLimit if the ball is larger than
/// max_words.
void for_each_reduced_word(int rank, const EnumerationOptions &opts,
                           const LetterVisitor &visit);

/// Visits one cyclically reduced representative (the least rotation) of
/// every conjugacy class whose cyclically reduced length lies in
/// [min_length, max_length], in shortlex order. The cap applies to the
/// number of cyclically reduced candidates examined.
void for_each_conjugacy_rep(int rank, const EnumerationOptions &opts,
                            const LetterVisitor &visit);

std::vector<Word> enumerate_ball(int rank, int radius,
                                 std::uint64_t max_words = kDefaultMaxWords);
std::vector<Word>
enumerate_conjugacy_reps(int rank, int radius,
                         std::uint64_t max_words = kDefaultMaxWords);

/// Left-to-right product of generator matrices.
template <typename Scalar>
SL2<Scalar> evaluate(std::span<const Letter> w,
                     std::span<const SL2<Scalar>> gens) {
  SL2<Scalar> out;
  for (const Letter &l : w) {
    if (l.gen >= gens.size())
      throw Error(ErrorCode::IndexOutOfRange,
                  "word uses generator " + std::to_string(l.gen) +
                      " but only " + std::to_string(gens.size()) +
                      " are defined");
    out *= l.sign > 0 ? gens[l.gen] : gens[l.gen].inverse();
  }
  return out;
}

template <typename Scalar>
SL2<Scalar> evaluate(const Word &w, const std::vector<SL2<Scalar>> &gens) {
  return evaluate<Scalar>(w.letters(), std::span<const SL2<Scalar>>(gens));
}

} // namespace margulis
