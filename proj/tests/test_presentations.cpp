#include "doctest.h"
#include "support.hpp"

using namespace symtest;

TEST_CASE("golden mean de Bruijn presentation") {
  const auto g = golden();
  CHECK(g.graph().state_count() == 2);
  CHECK(g.graph().edges().size() == 3);
  for (std::size_t n = 0; n <= 10; ++n)
    for (const Word& u : all_words(2, n)) CHECK(word_in_language(g, u) == !has_factor(u, Word{1, 1}));
}

TEST_CASE("longer forbidden words") {
  const Alphabet a = digits("012");
  const std::vector<Word> forb{w(a, "11"), w(a, "202")};
  const auto x = sft_from_forbidden(a, forb);
  for (std::size_t n = 0; n <= 7; ++n)
    for (const Word& u : all_words(3, n)) {
      const bool expect = !has_factor(u, forb[0]) && !has_factor(u, forb[1]);
      CHECK(word_in_language(x, u) == expect);
    }
  CHECK(sft_from_forbidden(digits("01"), {Word{0}, Word{1}}).empty());
  CHECK_THROWS_AS(sft_from_forbidden(a, {Word{}}), Error);
}

TEST_CASE("even shift from a regular expression") {
  const auto e = even();
  const auto m = determinize_and_minimize(e);
  CHECK(m.deterministic());
  CHECK(m.minimal());
  CHECK(m.graph().state_count() == 2);
  for (std::size_t n = 0; n <= 12; ++n)
    for (const Word& u : all_words(2, n)) CHECK(word_in_language(e, u) == even_language(u));
}

TEST_CASE("regex shift ((0*+1*)2(0*+1*)3)*") {
  const auto x = x51();
  const Alphabet& a = x.alphabet();
  CHECK(word_in_language(x, w(a, "231")));
  CHECK_FALSE(word_in_language(x, w(a, "120013")));
  CHECK(word_in_language(x, w(a, "1120003")));
  CHECK_FALSE(word_in_language(x, w(a, "22")));
  CHECK_FALSE(word_in_language(x, w(a, "2013")));
}

TEST_CASE("regex errors carry a column") {
  const Alphabet a = digits("01");
  try {
    shift_from_regex(a, "(0*1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(shift_from_regex(a, "02"), ParseError);
}

TEST_CASE("full shift minimizes to one state") {
  const auto m = determinize_and_minimize(full(3));
  CHECK(m.graph().state_count() == 1);
  CHECK(m.graph().edges().size() == 3);
}

TEST_CASE("determinization preserves the language of random graphs") {
  std::mt19937 rng(5);
  const Alphabet a = digits("01");
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<State> st(0, 3);
    std::uniform_int_distribution<Symbol> sym(0, 1);
    std::vector<Edge> edges;
    for (int i = 0; i < 7; ++i) edges.push_back({st(rng), sym(rng), st(rng)});
    const auto x = shift_from_graph(LabeledGraph(a, 4, edges));
    if (x.empty()) continue;
    const auto m = determinize_and_minimize(x);
    CHECK(same_language(x, m));
    for (std::size_t n = 0; n <= 7; ++n)
      for (const Word& u : all_words(2, n)) CHECK(word_in_language(x, u) == word_in_language(m, u));
  }
}

TEST_CASE("language difference finds the shortest witness") {
  const auto d = language_difference(full(2), golden());
  REQUIRE(d);
  CHECK(*d == Word{1, 1});
  CHECK_FALSE(language_difference(golden(), full(2)));
  CHECK(same_language(even(), shift_from_regex(digits("01"), "(1+00)*")));
}

TEST_CASE("point membership") {
  const auto e = even();
  const Alphabet& a = e.alphabet();
  CHECK(contains_point(e, parse_point("[0]^-inf 1 0 0 1 [0]^inf @0", a)));
  CHECK_FALSE(contains_point(e, parse_point("[0]^-inf 1 0 1 [0]^inf @0", a)));
  CHECK(contains_point(e, parse_point("[0]^-inf [0]^inf @0", a)));
  CHECK(contains_point(e, parse_point("[100]^-inf [1]^inf @0", a)));
  CHECK_FALSE(contains_point(e, parse_point("[10]^-inf [1]^inf @0", a)));
  const auto g = golden();
  CHECK_FALSE(contains_point(g, parse_point("[0]^-inf 1 1 [0]^inf @0", a)));
  CHECK(contains_point(g.with_sidedness(Sidedness::one), parse_point("1 [0]^inf", a)));
}

TEST_CASE("power recoding is a bijection on points") {
  const auto g = golden();
  const auto r = power_recode(g, 2);
  CHECK(r.block_length() == 2);
  std::mt19937 rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_point(g, rng);
    const auto y = r.encode(x);
    CHECK(contains_point(r.shift(), y));
    CHECK(r.decode(y) == x);
    for (Index i = -5; i <= 5; ++i) {
      const Word& b = r.block(y.at(i));
      CHECK(b == x.window(2 * i, 2 * i + 1).contents);
    }
  }
}
