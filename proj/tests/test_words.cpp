#include "margulis/words.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace margulis;
using margulis::testing::random_sl2;
using margulis::testing::random_word;

TEST_SUITE("words") {

TEST_CASE("parse and print") {
  CHECK(to_string(parse_word("abAB")) == "abAB");
  CHECK(parse_word("aA").empty());
  CHECK(parse_word("abBA").empty());
  CHECK(to_string(parse_word("abBc")) == "ac");
  CHECK(parse_word("1").empty());
  CHECK(to_string(Word()).empty());
  CHECK_THROWS_AS(parse_word("a1"), Error);
  CHECK_THROWS_AS(parse_word("a-b"), Error);
  try {
    parse_word("x y");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  CHECK(max_rank(parse_word("aD")) == 4);
}

TEST_CASE("letter order") {
  CHECK(parse_word("a") < parse_word("A"));
  CHECK(parse_word("A") < parse_word("b"));
  CHECK(parse_word("B") < parse_word("aa"));
  CHECK(parse_word("ab") < parse_word("aB"));
}

TEST_CASE("group operations") {
  const Word w = parse_word("abAc");
  CHECK(multiply(w, invert(w)).empty());
  CHECK(to_string(invert(w)) == "CaBA");
  CHECK(to_string(power(parse_word("ab"), 3)) == "ababab");
  CHECK(to_string(power(parse_word("ab"), -2)) == "BABA");
  CHECK(power(w, 0).empty());
  CHECK(to_string(cyclic_reduce(parse_word("abcA"))) == "bc");
  CHECK(to_string(cyclic_reduce(parse_word("abA"))) == "b");
  CHECK(is_cyclically_reduced(parse_word("abAB").letters()));
  CHECK_FALSE(is_cyclically_reduced(parse_word("abA").letters()));
  CHECK(to_string(least_rotation(parse_word("bab"))) == "abb");
  CHECK(to_string(conjugacy_canonical(parse_word("cabC"))) == "ab");

  NormalStream rng(31);
  for (int i = 0; i < 300; ++i) {
    const Word x = random_word(rng, 3, 8), y = random_word(rng, 3, 8);
    CHECK(multiply(x, invert(x)).empty());
    CHECK(invert(multiply(x, y)) == multiply(invert(y), invert(x)));
    const Word c = cyclic_reduce(x);
    CHECK(is_cyclically_reduced(c.letters()));
    CHECK(conjugacy_canonical(multiply(multiply(y, x), invert(y))) ==
          conjugacy_canonical(x));
  }
}

TEST_CASE("ball counts match the closed form") {
  CHECK(ball_count(2, 2) == 16);
  CHECK(enumerate_ball(2, 2).size() == 16);
  CHECK(enumerate_ball(1, 3).size() == 6);
  for (int r = 1; r <= 3; ++r)
    for (int n = 0; n <= 6; ++n) {
      std::uint64_t expected = 0, term = 2 * r;
      for (int k = 1; k <= n; ++k, term *= 2 * r - 1)
        expected += term;
      CHECK(ball_count(r, n) == expected);
      if (expected < 200000) {
        const auto ball = enumerate_ball(r, n);
        CHECK(ball.size() == expected);
        CHECK(std::is_sorted(ball.begin(), ball.end()));
        CHECK(std::adjacent_find(ball.begin(), ball.end()) == ball.end());
      }
    }
  CHECK(ball_count(4, 100) == UINT64_MAX);
}

TEST_CASE("enumeration respects the cap") {
  CHECK_THROWS_AS(enumerate_ball(4, 8, 1000), Error);
  try {
    enumerate_conjugacy_reps(4, 8, 1000);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ResourceLimit);
  }
  CHECK_NOTHROW(enumerate_ball(2, 3, ball_count(2, 3)));
}

TEST_CASE("conjugacy representatives cross-check against the ball") {
  for (int r = 1; r <= 3; ++r)
    for (int n = 1; n <= 4; ++n) {
      const auto reps = enumerate_conjugacy_reps(r, n);
      std::set<Word> rep_set(reps.begin(), reps.end());
      CHECK(rep_set.size() == reps.size());
      CHECK(std::is_sorted(reps.begin(), reps.end()));
      for (const Word &w : reps) {
        CHECK(is_cyclically_reduced(w.letters()));
        CHECK(least_rotation(w) == w);
      }
      std::set<Word> from_ball;
      for (const Word &w : enumerate_ball(r, n)) {
        const Word c = conjugacy_canonical(w);
        CHECK(rep_set.count(c) == 1);
        from_ball.insert(c);
      }
      CHECK(from_ball == rep_set);
    }
}

TEST_CASE("cyclically reduced counts") {
  for (int r = 1; r <= 3; ++r)
    for (int k = 1; k <= 5; ++k) {
      std::uint64_t n = 0;
      EnumerationOptions opts;
      opts.min_length = opts.max_length = k;
      for_each_reduced_word(r, opts, [&](std::span<const Letter> w) {
        n += is_cyclically_reduced(w) ? 1 : 0;
      });
      CHECK(cyclically_reduced_count(r, k) == n);
    }
}

TEST_CASE("first letter partition covers the set once") {
  const auto all = enumerate_conjugacy_reps(2, 5);
  std::vector<Word> merged;
  for (int code = 0; code < 4; ++code) {
    EnumerationOptions opts;
    opts.max_length = 5;
    opts.first_code = code;
    for_each_conjugacy_rep(2, opts, [&](std::span<const Letter> w) {
      CHECK(w.front().code() == code);
      merged.push_back(reduce(w));
    });
  }
  std::sort(merged.begin(), merged.end());
  CHECK(merged == all);
}

TEST_CASE("evaluate") {
  const std::vector<SL2d> gens{SL2d(2, 0, 0, 0.5), SL2d(1, 1, 0, 1)};
  CHECK(evaluate(Word(), gens).matrix().isIdentity(0));
  const SL2d ab = evaluate(parse_word("ab"), gens);
  CHECK(ab.matrix() == (gens[0] * gens[1]).matrix());
  const SL2d aA = evaluate(parse_word("aBb"), gens);
  CHECK(aA.matrix() == gens[0].matrix());
  CHECK_THROWS_AS(evaluate(parse_word("c"), gens), Error);
  try {
    evaluate(parse_word("abc"), gens);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }

  NormalStream rng(32);
  std::vector<SL2d> g3;
  for (int i = 0; i < 3; ++i)
    g3.push_back(random_sl2(rng));
  for (int i = 0; i < 300; ++i) {
    const Word u = random_word(rng, 3, 5), v = random_word(rng, 3, 5);
    const Mat2d lhs = evaluate(multiply(u, v), g3).matrix();
    const Mat2d rhs = (evaluate(u, g3) * evaluate(v, g3)).matrix();
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <
          1e-10 * (1 + rhs.lpNorm<Eigen::Infinity>()));
    // Rotations of a word share the trace.
    const Word c = cyclic_reduce(u);
    std::vector<Letter> rot(c.begin(), c.end());
    std::rotate(rot.begin(), rot.begin() + rot.size() / 2, rot.end());
    const double t1 = evaluate(c, g3).trace();
    const double t2 = evaluate<double>(rot, g3).trace();
    CHECK(std::abs(t1 - t2) < 1e-10 * (1 + std::abs(t1)));
  }
}

}
