#include "doctest.h"
#include "support.hpp"

using namespace symtest;

namespace {

// Direct evaluation of a presentation at index i, without normalization.
struct RawPoint {
  Word left, core, right;
  Index origin;
  Symbol at(Index i) const {
    const Index k = i + origin;
    const auto n = static_cast<Index>(core.size());
    if (k >= 0 && k < n) return core[static_cast<std::size_t>(k)];
    if (k >= n) return right[static_cast<std::size_t>((k - n) % static_cast<Index>(right.size()))];
    const Index back = -k - 1;
    const auto l = static_cast<Index>(left.size());
    return left[static_cast<std::size_t>(l - 1 - back % l)];
  }
};

Word rand_word(std::mt19937& rng, std::size_t k, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> len(lo, hi);
  std::uniform_int_distribution<int> sym(0, static_cast<int>(k) - 1);
  Word out(len(rng));
  for (auto& s : out) s = static_cast<Symbol>(sym(rng));
  return out;
}

}  // namespace

TEST_CASE("alphabet parse and format") {
  const Alphabet a = digits("012");
  CHECK(a.parse("0 12") == Word{0, 1, 2});
  CHECK(a.format(Word{2, 0}) == "20");
  CHECK_THROWS_AS(a.parse("3"), Error);
  const Alphabet b({"ab", "c"});
  CHECK_FALSE(b.compact());
  CHECK(b.parse("ab c ab") == Word{0, 1, 0});
  CHECK(b.format(Word{1, 0}) == "c ab");
  CHECK_THROWS_AS(Alphabet({"a", "a"}), Error);
}

TEST_CASE("primitive roots and least rotations against brute force") {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    const Word u = rand_word(rng, 2, 1, 9);
    std::size_t d = u.size();
    for (std::size_t c = 1; c <= u.size(); ++c) {
      if (u.size() % c) continue;
      bool ok = true;
      for (std::size_t i = 0; i < u.size(); ++i) ok = ok && u[i] == u[i % c];
      if (ok) {
        d = c;
        break;
      }
    }
    CHECK(primitive_root_length(u) == d);
    Word best = u;
    for (std::size_t k = 0; k < u.size(); ++k) best = std::min(best, rotate_left(u, k));
    CHECK(rotate_left(u, least_rotation(u)) == best);
  }
}

TEST_CASE("periodic words") {
  const PeriodicWord p(Word{1, 0, 1, 0});
  CHECK(p.period() == 2);
  CHECK(p.primitive() == Word{1, 0});
  CHECK(p.canonical() == Word{0, 1});
  CHECK(p.same_orbit(PeriodicWord(Word{0, 1})));
  CHECK(PeriodicWord(Word{0}) < PeriodicWord(Word{0, 1}));
}

TEST_CASE("normalization keeps the point and makes equal points compare equal") {
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    RawPoint r{rand_word(rng, 2, 1, 3), rand_word(rng, 2, 0, 6), rand_word(rng, 2, 1, 3), 0};
    std::uniform_int_distribution<Index> org(-4, static_cast<Index>(r.core.size()) + 4);
    r.origin = org(rng);
    const auto p = PointPresentation::two_sided(r.left, r.core, r.right, r.origin);
    bool same = true;
    for (Index i = -30; i <= 30; ++i) same = same && p.at(i) == r.at(i);
    CHECK(same);
    CHECK(p.core_first() <= 0);
    CHECK((p.core().empty() || p.core_last() >= 0));
    // A second presentation of the same point: unroll one period of each tail.
    Word core2 = r.left;
    core2.insert(core2.end(), r.core.begin(), r.core.end());
    core2.insert(core2.end(), r.right.begin(), r.right.end());
    const auto q = PointPresentation::two_sided(r.left, core2, r.right, r.origin + static_cast<Index>(r.left.size()));
    CHECK(p == q);
  }
}

TEST_CASE("shift_point moves windows") {
  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto p = PointPresentation::two_sided(rand_word(rng, 3, 1, 3), rand_word(rng, 3, 0, 5),
                                                rand_word(rng, 3, 1, 3), 0);
    std::uniform_int_distribution<Index> k(-6, 6);
    const Index s = k(rng);
    const auto q = shift_point(p, s);
    CHECK(q.window(-10, 10).contents == p.window(-10 + s, 10 + s).contents);
  }
  const auto o = PointPresentation::one_sided(Word{1, 2}, Word{0});
  CHECK(shift_point(o, 1) == PointPresentation::one_sided(Word{2}, Word{0}));
  CHECK_THROWS_AS(shift_point(o, -1), Error);
}

TEST_CASE("periodicity") {
  CHECK(is_periodic(PointPresentation::periodic(PeriodicWord(Word{0, 1}))) == std::optional<std::size_t>(2));
  CHECK_FALSE(is_periodic(PointPresentation::two_sided(Word{0}, Word{1}, Word{0}, 0)));
  CHECK(is_periodic(PointPresentation::two_sided(Word{0, 1}, Word{0, 1}, Word{0, 1}, 1)) ==
        std::optional<std::size_t>(2));
  CHECK_FALSE(is_periodic(PointPresentation::one_sided(Word{1}, Word{0})));
}

TEST_CASE("splice reads x, then s, then y") {
  const auto x = PointPresentation::two_sided(Word{1}, Word{0, 0, 0}, Word{2}, 1);
  const auto s = PointPresentation::periodic(PeriodicWord(Word{0}));
  const auto y = PointPresentation::two_sided(Word{2}, Word{0, 0, 0}, Word{1}, 1);
  const auto z = splice(x, s, y, 1);
  CHECK(z.window(-4, 4).contents == Word{1, 1, 1, 0, 0, 0, 1, 1, 1});
  const auto bad = PointPresentation::two_sided(Word{1}, Word{1}, Word{1}, 0);
  CHECK_THROWS_AS(splice(bad, s, y, 1), Error);
}

TEST_CASE("point literals round trip") {
  const Alphabet a = digits("012");
  const auto p = parse_point("[01]^-inf 2 2 [1]^inf @1", a);
  CHECK(p.at(0) == 2);
  CHECK(p.at(-1) == 2);
  CHECK(p.at(-2) == 1);
  CHECK(p.at(1) == 1);
  CHECK(parse_point(format_point(p, a), a) == p);
  const auto o = parse_point("1 0 [0 1]^inf", a);
  CHECK(o.sidedness() == Sidedness::one);
  CHECK(o.window(0, 5).contents == Word{1, 0, 0, 1, 0, 1});
  CHECK(parse_point(format_point(o, a), a) == o);
  CHECK_THROWS_AS(parse_point("[0]^-inf 3 [0]^inf", a), Error);
  CHECK_THROWS_AS(parse_point("[]^inf", a), Error);
}
