#include "margulis/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace margulis {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
  return x > kSaturated - y ? kSaturated : x + y;
}

std::uint64_t sat_mul(std::uint64_t x, std::uint64_t y) {
  if (x != 0 && y > kSaturated / x)
    return kSaturated;
  return x * y;
}

std::uint64_t sat_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i)
    out = sat_mul(out, base);
  return out;
}

void check_rank(int rank) {
  if (rank < 1 || rank > 26)
    throw Error(ErrorCode::InvalidArgument,
                "rank must be between 1 and 26, got " + std::to_string(rank));
}

void check_lengths(const EnumerationOptions &opts) {
  if (opts.min_length < 0 || opts.max_length < 0)
    throw Error(ErrorCode::InvalidArgument, "word lengths must be >= 0");
}

// Rotation k of w is lexicographically >= w for every k.
bool least_rotation_check(std::span<const Letter> w) {
  const std::size_t n = w.size();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const int lhs = w[(i + k) % n].code();
      const int rhs = w[i].code();
      if (lhs < rhs)
        return false;
      if (lhs > rhs)
        break;
    }
  }
  return true;
}

} // namespace

Word Word::generator(int gen, int sign) {
  const Letter l{static_cast<std::uint16_t>(gen),
                 static_cast<std::int8_t>(sign < 0 ? -1 : 1)};
  return reduce(std::span<const Letter>(&l, 1));
}

std::strong_ordering operator<=>(const Word &x, const Word &y) {
  if (x.size() != y.size())
    return x.size() <=> y.size();
  return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(),
                                                y.end());
}

Word reduce(std::span<const Letter> letters) {
  Word out;
  out.letters_.reserve(letters.size());
  for (const Letter &l : letters) {
    if (!out.letters_.empty() && out.letters_.back().cancels(l))
      out.letters_.pop_back();
    else
      out.letters_.push_back(l);
  }
  return out;
}

Word multiply(const Word &x, const Word &y) {
  std::vector<Letter> joined(x.begin(), x.end());
  joined.insert(joined.end(), y.begin(), y.end());
  return reduce(joined);
}

Word invert(const Word &w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(it->inverse());
  return reduce(out);
}

Word power(const Word &w, int n) {
  const Word base = n < 0 ? invert(w) : w;
  Word out;
  for (int i = 0; i < std::abs(n); ++i)
    out = multiply(out, base);
  return out;
}

bool is_cyclically_reduced(std::span<const Letter> w) {
  return w.size() < 2 || !w.front().cancels(w.back());
}

Word cyclic_reduce(const Word &w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo].cancels(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return reduce(w.letters().subspan(lo, hi - lo));
}

bool is_least_rotation(std::span<const Letter> w) {
  return least_rotation_check(w);
}

Word least_rotation(const Word &w) {
  const std::size_t n = w.size();
  std::vector<Letter> best(w.begin(), w.end());
  std::vector<Letter> rot(n);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      rot[i] = w[(i + k) % n];
    if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(),
                                     best.end()))
      best = rot;
  }
  return reduce(best);
}

Word conjugacy_canonical(const Word &w) {
  return least_rotation(cyclic_reduce(w));
}

int max_rank(const Word &w) {
  int r = 0;
  for (const Letter &l : w)
    r = std::max(r, l.gen + 1);
  return r;
}

Word parse_word(std::string_view text) {
  if (text == "1")
    return {};
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    if (ch >= 'a' && ch <= 'z')
      letters.push_back({static_cast<std::uint16_t>(ch - 'a'), 1});
    else if (ch >= 'A' && ch <= 'Z')
      letters.push_back({static_cast<std::uint16_t>(ch - 'A'), -1});
    else
      throw Error(ErrorCode::ParseError,
                  std::string("invalid character '") + ch + "' in word \"" +
                      std::string(text) + "\"");
  }
  return reduce(letters);
}

std::string to_string(std::span<const Letter> w) {
  std::string out;
  out.reserve(w.size());
  for (const Letter &l : w)
    out.push_back(static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen));
  return out;
}

std::uint64_t ball_count(int rank, int radius) {
  std::uint64_t total = 0;
  std::uint64_t level = 2 * static_cast<std::uint64_t>(rank);
  for (int k = 1; k <= radius; ++k) {
    total = sat_add(total, level);
    level = sat_mul(level, 2 * static_cast<std::uint64_t>(rank) - 1);
  }
  return total;
}

std::uint64_t cyclically_reduced_count(int rank, int k) {
  if (k <= 0)
    return 0;
  const std::uint64_t r = static_cast<std::uint64_t>(rank);
  std::uint64_t n = sat_add(sat_pow(2 * r - 1, k), 1);
  if (k % 2 == 0)
    n = sat_add(n, 2 * (r - 1));
  return n;
}

void for_each_reduced_word(int rank, const EnumerationOptions &opts,
                           const LetterVisitor &visit) {
  check_rank(rank);
  check_lengths(opts);
  const std::uint64_t work = ball_count(rank, opts.max_length);
  if (work > opts.max_words)
    throw Error(ErrorCode::ResourceLimit,
                "ball of radius " + std::to_string(opts.max_length) +
                    " has " + std::to_string(work) +
                    " words, above the cap of " +
                    std::to_string(opts.max_words));

  const int ncodes = 2 * rank;
  std::vector<Letter> buf;
  const std::function<void(int)> grow = [&](int target) {
    if (static_cast<int>(buf.size()) == target) {
      visit(buf);
      return;
    }
    for (int code = 0; code < ncodes; ++code) {
      if (buf.empty() && opts.first_code >= 0 && code != opts.first_code)
        continue;
      const Letter l = letter_from_code(code);
      if (!buf.empty() && buf.back().cancels(l))
        continue;
      buf.push_back(l);
      grow(target);
      buf.pop_back();
    }
  };
  for (int len = std::max(opts.min_length, 1); len <= opts.max_length; ++len)
    grow(len);
}

void for_each_conjugacy_rep(int rank, const EnumerationOptions &opts,
                            const LetterVisitor &visit) {
  check_rank(rank);
  check_lengths(opts);
  std::uint64_t work = 0;
  for (int k = std::max(opts.min_length, 1); k <= opts.max_length; ++k)
    work = sat_add(work, cyclically_reduced_count(rank, k));
  if (work > opts.max_words)
    throw Error(ErrorCode::ResourceLimit,
                "conjugacy scan up to length " +
                    std::to_string(opts.max_length) + " examines " +
                    std::to_string(work) + " words, above the cap of " +
                    std::to_string(opts.max_words));

  const int ncodes = 2 * rank;
  std::vector<Letter> buf;
  // A least rotation starts with its smallest letter, so later letters never
  // have a smaller code than the first one.
  const std::function<void(int)> grow = [&](int target) {
    if (static_cast<int>(buf.size()) == target) {
      if (is_cyclically_reduced(buf) && least_rotation_check(buf))
        visit(buf);
      return;
    }
    const int lo = buf.empty() ? 0 : buf.front().code();
    for (int code = lo; code < ncodes; ++code) {
      if (buf.empty() && opts.first_code >= 0 && code != opts.first_code)
        continue;
      const Letter l = letter_from_code(code);
      if (!buf.empty() && buf.back().cancels(l))
        continue;
      buf.push_back(l);
      grow(target);
      buf.pop_back();
    }
  };
  for (int len = std::max(opts.min_length, 1); len <= opts.max_length; ++len)
    grow(len);
}

std::vector<Word> enumerate_ball(int rank, int radius,
                                 std::uint64_t max_words) {
  std::vector<Word> out;
  EnumerationOptions opts;
  opts.max_length = radius;
  opts.max_words = max_words;
  for_each_reduced_word(rank, opts, [&](std::span<const Letter> w) {
    out.push_back(reduce(w));
  });
  return out;
}

std::vector<Word> enumerate_conjugacy_reps(int rank, int radius,
                                           std::uint64_t max_words) {
  std::vector<Word> out;
  EnumerationOptions opts;
  opts.max_length = radius;
  opts.max_words = max_words;
  for_each_conjugacy_rep(rank, opts, [&](std::span<const Letter> w) {
    out.push_back(reduce(w));
  });
  return out;
}

} // namespace margulis
