#include "doctest.h"
#include "support.hpp"

using namespace symtest;

namespace {

SlidingBlockCode xor_code() {
  return SlidingBlockCode::from_function(digits("01"), digits("01"), 0, 1,
                                         [](std::span<const Symbol> u) { return static_cast<Symbol>(u[0] ^ u[1]); });
}

SlidingBlockCode flip3() {
  return SlidingBlockCode::from_function(digits("012"), digits("012"), 0, 1, [](std::span<const Symbol> u) {
    if (u[1] != 0 || u[0] == 0) return u[0];
    return static_cast<Symbol>(3 - u[0]);
  });
}

Word image_of(const EquivariantOracle& o, const Word& u) {
  Word out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto s = o.query(u, i);
    out.push_back(s ? *s : Symbol(0xFFFF));
  }
  return out;
}

Word parse(const EquivariantOracle& o, std::string_view s) { return o.domain().alphabet().parse(s); }
std::string show(const EquivariantOracle& o, const Word& u) { return o.codomain().alphabet().format(u); }

}  // namespace

TEST_CASE("apply_code basics") {
  std::mt19937 rng(1);
  const auto id = SlidingBlockCode::identity(digits("01"));
  for (int t = 0; t < 20; ++t) {
    const auto p = random_point(full(2), rng);
    CHECK(apply_code(id, p) == p);
  }
  const Alphabet a = digits("01");
  CHECK(apply_code(xor_code(), parse_point("[01]^-inf [01]^inf @0", a)) == parse_point("[1]^-inf [1]^inf @0", a));
  const auto one = apply_code(xor_code(), parse_point("1 1 [0]^inf", a));
  CHECK(one == parse_point("0 1 [0]^inf", a));
}

TEST_CASE("apply_code commutes with the shift") {
  std::mt19937 rng(2);
  const auto c = flip3();
  for (int t = 0; t < 100; ++t) {
    const auto p = random_point(full(3), rng);
    std::uniform_int_distribution<Index> k(-5, 5);
    const Index s = k(rng);
    CHECK(apply_code(c, shift_point(p, s)) == shift_point(apply_code(c, p), s));
    for (Index i = -8; i <= 8; ++i) {
      const Word win = p.window(i, i + 1).contents;
      CHECK(apply_code(c, p).at(i) == *c.lookup(win));
    }
  }
}

TEST_CASE("higher block code decodes back") {
  const auto g = golden();
  const auto hb = higher_block_code(g, 2);
  CHECK(hb.codomain().size() == 3);
  const auto r = power_recode(g, 1);
  std::mt19937 rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto p = random_point(g, rng);
    const auto y = apply_code(hb, p);
    for (Index i = -6; i <= 6; ++i) CHECK(hb.codomain().token(y.at(i)) == g.alphabet().format(p.window(i, i + 1).contents));
    CHECK(r.decode(r.encode(p)) == p);
  }
}

TEST_CASE("composition") {
  const Alphabet a = digits("01");
  const auto swap = SlidingBlockCode::permutation(a, {1, 0});
  const auto id = SlidingBlockCode::identity(a);
  const auto ss = compose(swap, swap);
  for (std::size_t n = 1; n <= 6; ++n)
    for (const Word& u : all_words(2, n)) CHECK(ss.apply_to_word(u) == u);
  const auto x = xor_code();
  const auto xi = compose(x, id);
  const auto ix = compose(id, x);
  for (const Word& u : all_words(2, 6)) {
    CHECK(xi.apply_to_word(u) == x.apply_to_word(u));
    CHECK(ix.apply_to_word(u) == x.apply_to_word(u));
  }
  const auto left = SlidingBlockCode::shift_map(a);
  const auto right = SlidingBlockCode(a, a, 1, 0, {{{0, 0}, 0}, {{0, 1}, 0}, {{1, 0}, 1}, {{1, 1}, 1}});
  const auto lr = compose(left, right);
  for (const Word& u : all_words(2, 5)) CHECK(lr.apply_to_word(u) == Word(u.begin() + 1, u.end() - 1));
  std::mt19937 rng(6);
  const auto both = compose(x, swap);
  for (int t = 0; t < 40; ++t) {
    const auto p = random_point(full(2), rng);
    CHECK(apply_code(both, p) == apply_code(swap, apply_code(x, p)));
  }
  CHECK_THROWS_AS(compose(x, flip3()), Error);
}

TEST_CASE("containment of code images") {
  const Alphabet a = digits("01");
  const auto id = SlidingBlockCode::identity(a);
  CHECK(code_maps_into(id, golden(), full(2)).contained);
  const auto r = code_maps_into(id, full(2), golden());
  CHECK_FALSE(r.contained);
  REQUIRE(r.witness);
  CHECK(*r.witness == Word{1, 1});
  // 2-block recoding of the golden mean, built independently as an SFT on block pairs.
  const auto hb = higher_block_code(golden(), 2);
  const Alphabet& b = hb.codomain();
  std::vector<Word> forb;
  for (Symbol s = 0; s < b.size(); ++s)
    for (Symbol t = 0; t < b.size(); ++t)
      if (b.token(s)[1] != b.token(t)[0]) forb.push_back(Word{s, t});
  const auto blocks = sft_from_forbidden(b, forb);
  CHECK(code_maps_into(hb, golden(), blocks).contained);
  CHECK(same_language(image_presentation(hb, golden()), blocks));
  std::mt19937 rng(8);
  for (int t = 0; t < 30; ++t) CHECK(contains_point(blocks, apply_code(hb, random_point(golden(), rng))));
}

TEST_CASE("oracle_from_code is determined exactly at its radius") {
  const auto c = flip3();
  const auto o = oracle_from_code(c);
  std::mt19937 rng(10);
  for (int t = 0; t < 100; ++t) {
    const Word u = random_walk(full(3), 6, rng);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto s = o.query(u, i);
      CHECK(s.has_value() == (i + 1 < u.size()));
      if (s) CHECK(*s == *c.lookup(std::span<const Symbol>(u).subspan(i, 2)));
    }
  }
}

TEST_CASE("example 5.1 windows") {
  const auto o = example_5_1();
  CHECK(show(o, image_of(o, parse(o, "2003"))) == "2113");
  CHECK(show(o, image_of(o, parse(o, "3002"))) == "3002");
  CHECK(show(o, image_of(o, parse(o, "3112"))) == "3112");
  CHECK_FALSE(o.query(parse(o, "000"), 1));
  CHECK(o.query(parse(o, "0002"), 0) == Symbol{0});
  CHECK(o.query(parse(o, "0003"), 0) == Symbol{1});
  CHECK_THROWS_AS(o.query(parse(o, "2002"), 1), Error);
  CHECK_THROWS_AS(o.query(parse(o, "2013"), 1), Error);
}

TEST_CASE("example 5.2 windows") {
  const auto o = example_5_2();
  CHECK(show(o, image_of(o, parse(o, "100001"))) == "201012");
  CHECK(show(o, image_of(o, parse(o, "11"))) == "22");
  CHECK_FALSE(o.query(parse(o, "0000"), 2));
  CHECK_THROWS_AS(o.query(parse(o, "10001"), 0), Error);
  CHECK_THROWS_AS(o.query(parse(o, "101"), 0), Error);
  // (100)^inf maps to (201)^inf.
  const Word u = parse(o, "100100100100");
  const Word img = image_of(o, u);
  CHECK(show(o, Word(img.begin(), img.begin() + 9)) == "201201201");
}

TEST_CASE("example 5.3 windows") {
  const auto o = example_5_3();
  CHECK(show(o, image_of(o, parse(o, "20002"))) == "20102");
  CHECK(show(o, image_of(o, parse(o, "200002"))) == "201002");
  CHECK(show(o, image_of(o, parse(o, "22"))) == "22");
  CHECK(o.query(parse(o, "20000000"), 1) == Symbol{0});
  CHECK_FALSE(o.query(parse(o, "20000000"), 4));
  CHECK_FALSE(o.query(parse(o, "000"), 1));
}

TEST_CASE("examples 5.4 and 5.5 windows") {
  const auto g = example_5_4();
  CHECK(g.query(parse(g, "1001"), 0) == Symbol{2});
  CHECK(g.query(parse(g, "101"), 0) == Symbol{1});
  CHECK(g.query(parse(g, "2001"), 0) == Symbol{1});
  CHECK_FALSE(g.query(parse(g, "1000"), 0));
  CHECK(g.query(parse(g, "1000"), 1) == Symbol{0});
  const auto h = example_5_5();
  CHECK_FALSE(h.query(parse(h, "1001"), 0));
  CHECK_FALSE(h.query(parse(h, "1001"), 3));
  CHECK(h.query(parse(h, "1001000"), 3) == Symbol{2});
}

TEST_CASE("example 5.5 one-sided visibility") {
  const auto h = example_5_5();
  // Three visible zeros on the left put the hidden nonzero at distance >= 4.
  CHECK(h.query(parse(h, "0001001"), 3) == Symbol{2});
  CHECK(h.query(parse(h, "00010010"), 3) == Symbol{2});
  CHECK_FALSE(h.query(parse(h, "0001000"), 3));
  CHECK(h.query(parse(h, "00011"), 3) == Symbol{2});
  CHECK(h.query(parse(h, "10100"), 2) == Symbol{1});
  CHECK(h.query(parse(h, "1000100"), 4) == std::nullopt);
  CHECK(h.query(parse(h, "100010000"), 4) == Symbol{1});
  CHECK(h.query(parse(h, "1001000"), 3) == Symbol{2});
}

TEST_CASE("g is an involution on sampled windows") {
  std::mt19937 rng(12);
  for (const auto& g : {example_5_4(), example_5_5()}) {
    int checked = 0;
    for (int t = 0; t < 100; ++t) {
      const Word u = random_walk(g.domain(), 14, rng);
      const Word once = image_of(g, u);
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (once[i] == 0xFFFF) continue;
        // Only positions whose whole neighbourhood is determined can be re-queried.
        std::size_t lo = i, hi = i;
        while (lo > 0 && once[lo - 1] != 0xFFFF) --lo;
        while (hi + 1 < u.size() && once[hi + 1] != 0xFFFF) ++hi;
        const Word seg(once.begin() + static_cast<std::ptrdiff_t>(lo), once.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        const auto twice = g.query(seg, i - lo);
        if (!twice) continue;
        CHECK(*twice == u[i]);
        ++checked;
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("oracle monotonicity under extension") {
  std::mt19937 rng(13);
  for (const auto& o : {example_5_1(), example_5_2(), example_5_3(), example_5_4(), example_5_5()}) {
    const bool two = o.sidedness() == Sidedness::two;
    for (int t = 0; t < 200; ++t) {
      const Word big = random_walk(determinize_and_minimize(o.domain()), 24, rng);
      std::uniform_int_distribution<std::size_t> cut(0, 8);
      const std::size_t l = two ? cut(rng) : 0;
      const std::size_t r = cut(rng);
      const Word small(big.begin() + static_cast<std::ptrdiff_t>(l), big.end() - static_cast<std::ptrdiff_t>(r));
      for (std::size_t i = 0; i < small.size(); ++i) {
        const auto a = o.query(small, i);
        if (!a) continue;
        CHECK(o.query(big, i + l) == a);
      }
    }
  }
}

TEST_CASE("oracle answers depend only on the relative window") {
  std::mt19937 rng(14);
  for (const auto& o : {example_5_1(), example_5_2(), example_5_3(), example_5_5()}) {
    const auto m = determinize_and_minimize(o.domain());
    for (int t = 0; t < 100; ++t) {
      const Word big = random_walk(m, 20, rng);
      std::uniform_int_distribution<std::size_t> pos(2, 17);
      const std::size_t c = pos(rng);
      // The same neighbourhood read at two different offsets of two different windows.
      const Word a(big.begin() + 1, big.end() - 1);
      const Word b(big.begin() + 2, big.end());
      const Word a2(big.begin() + 2, big.end() - 1);
      CHECK(o.query(a2, c - 2) == o.query(Word(b.begin(), b.end() - 1), c - 2));
      CHECK(o.query(Word(a.begin() + 1, a.end()), c - 2) == o.query(a2, c - 2));
    }
  }
}

TEST_CASE("example 5.2 is inverted by the rewriting back") {
  const auto f = example_5_2();
  const auto inv = example_5_2_inverse();
  const auto e = even();
  std::size_t checked = 0;
  for (std::size_t n = 2; n <= 12; ++n) {
    for (const Word& u : all_words(2, n)) {
      if (u.front() != 1 || u.back() != 1 || !word_in_language(e, u)) continue;
      const Word img = image_of(f, u);
      CHECK(word_in_language(inv.domain(), img));
      CHECK(image_of(inv, img) == u);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("example 5.1 keeps its language on determined windows") {
  const auto o = example_5_1();
  std::mt19937 rng(15);
  const auto m = determinize_and_minimize(o.domain());
  for (int t = 0; t < 200; ++t) {
    const Word u = random_walk(m, 16, rng);
    const Word img = image_of(o, u);
    std::size_t lo = 0;
    while (lo < img.size() && img[lo] == 0xFFFF) ++lo;
    std::size_t hi = img.size();
    while (hi > lo && img[hi - 1] == 0xFFFF) --hi;
    CHECK(word_in_language(o.domain(), Word(img.begin() + static_cast<std::ptrdiff_t>(lo),
                                            img.begin() + static_cast<std::ptrdiff_t>(hi))));
  }
}

TEST_CASE("continuity probe") {
  const auto g = example_5_4();
  const Alphabet& a = g.domain().alphabet();
  const auto w = continuity_probe(g, parse_point("1 [0]^inf", a), 0, 12);
  REQUIRE(w);
  CHECK(w->pairs.size() == 12);
  for (const auto& p : w->pairs) {
    CHECK(p.first.image != p.second.image);
    for (const auto* m : {&p.first, &p.second}) {
      CHECK(contains_point(g.domain(), m->realization));
      CHECK(m->realization.window(0, static_cast<Index>(p.n)).contents ==
            parse_point("1 [0]^inf", a).window(0, static_cast<Index>(p.n)).contents);
    }
  }
  CHECK_FALSE(continuity_probe(oracle_from_code(SlidingBlockCode::identity(digits("01"))),
                               parse_point("[0]^-inf [0]^inf @0", digits("01")), 0, 8));
  const auto m = example_5_3();
  const auto w3 = continuity_probe(m, parse_point("[0]^-inf [0]^inf @0", m.domain().alphabet()), 0, 10);
  REQUIRE(w3);
  for (const auto& p : w3->pairs) CHECK((p.first.image == 1) != (p.second.image == 1));
}
