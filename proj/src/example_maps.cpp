// Window rules for the five counterexample maps.

#include <optional>

#include "symdyn/codes.hpp"

namespace symdyn {
namespace {

using Span = std::span<const Symbol>;

std::optional<std::size_t> nearest_left(Span w, std::size_t c, auto pred) {
  for (std::size_t i = c; i-- > 0;)
    if (pred(w[i])) return i;
  return std::nullopt;
}

std::optional<std::size_t> nearest_right(Span w, std::size_t c, auto pred) {
  for (std::size_t i = c + 1; i < w.size(); ++i)
    if (pred(w[i])) return i;
  return std::nullopt;
}

Alphabet digits(std::string_view s) {
  std::vector<std::string> t;
  for (char c : s) t.emplace_back(1, c);
  return Alphabet(std::move(t));
}

[[noreturn]] void inconsistent(const char* what) {
  throw Error(std::string("window inconsistent with domain shift (") + what + ")");
}

// 0,1 runs between delimiters 2 and 3; delimiters alternate and each delimited run is uniform.
void check_5_1(Span w) {
  std::optional<Symbol> last_delim;
  int run_symbol = -1;
  for (Symbol s : w) {
    if (s >= 2) {
      if (last_delim && *last_delim == s) inconsistent("delimiters 2 and 3 must alternate");
      last_delim = s;
      run_symbol = -1;
    } else {
      if (run_symbol >= 0 && run_symbol != s) inconsistent("mixed run");
      run_symbol = s;
    }
  }
}

Symbol flip01(Symbol s) { return s == 0 ? 1 : 0; }

}  // namespace

EquivariantOracle example_5_1() {
  const Alphabet a = digits("0123");
  const auto x = shift_from_regex(a, "((0*+1*)2(0*+1*)3)*");
  auto fn = [](Span w, std::size_t c) -> EquivariantOracle::Answer {
    check_5_1(w);
    if (w[c] >= 2) return w[c];
    const auto delim = [](Symbol s) { return s >= 2; };
    if (const auto l = nearest_left(w, c, delim)) return w[*l] == 2 ? flip01(w[c]) : w[c];
    if (const auto r = nearest_right(w, c, delim)) return w[*r] == 3 ? flip01(w[c]) : w[c];
    return std::nullopt;
  };
  return EquivariantOracle("example:5.1", x, x, std::move(fn));
}

EquivariantOracle example_5_2() {
  const Alphabet a = digits("01");
  const auto x = shift_from_regex(a, "(1(00)*)*");
  const auto y = shift_from_regex(digits("012"), "(2(01)*)*");
  auto fn = [](Span w, std::size_t c) -> EquivariantOracle::Answer {
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] != 1) continue;
      if (prev && (i - *prev - 1) % 2 == 1) inconsistent("odd run of 0s");
      prev = i;
    }
    if (w[c] == 1) return Symbol{2};
    const auto one = [](Symbol s) { return s == 1; };
    if (const auto l = nearest_left(w, c, one)) return static_cast<Symbol>((c - *l - 1) % 2);
    if (const auto r = nearest_right(w, c, one)) return static_cast<Symbol>((*r - c) % 2);
    return std::nullopt;
  };
  return EquivariantOracle("example:5.2", x, y, std::move(fn));
}

EquivariantOracle example_5_2_inverse() {
  const auto y = shift_from_regex(digits("012"), "(2(01)*)*");
  const auto x = shift_from_regex(digits("01"), "(1(00)*)*");
  auto fn = [](Span w, std::size_t c) -> EquivariantOracle::Answer {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Symbol s = w[i], t = w[i + 1];
      const bool ok = (s == 2 && t != 1) || (s == 0 && t == 1) || (s == 1 && t != 1);
      if (!ok) inconsistent("not in (2(01)*)*");
    }
    return Symbol{w[c] == 2 ? Symbol{1} : Symbol{0}};
  };
  return EquivariantOracle("example:5.2-inverse", y, x, std::move(fn));
}

EquivariantOracle example_5_3() {
  const Alphabet a = digits("02");
  const Alphabet b = digits("012");
  auto fn = [](Span w, std::size_t c) -> EquivariantOracle::Answer {
    if (w[c] == 1) return Symbol{2};
    const auto two = [](Symbol s) { return s == 1; };
    const auto l = nearest_left(w, c, two);
    const auto r = nearest_right(w, c, two);
    if (l && r) {
      const std::size_t gap = *r - *l - 1;
      return Symbol{c == *l + (gap + 1) / 2 ? Symbol{1} : Symbol{0}};
    }
    if (l) {
      const std::size_t gap_min = w.size() - 1 - *l;
      if (c - *l < (gap_min + 1) / 2) return Symbol{0};
    } else if (r) {
      const std::size_t gap_min = *r;
      if (*r - c < (gap_min + 2) / 2) return Symbol{0};
    }
    return std::nullopt;
  };
  return EquivariantOracle("example:5.3", full_shift(a), full_shift(b), std::move(fn));
}

namespace {

Symbol parity_flip(Symbol s, std::size_t d) { return d % 2 == 1 ? static_cast<Symbol>(3 - s) : s; }

}  // namespace

EquivariantOracle example_5_4() {
  const auto x = full_shift(digits("012"), Sidedness::one);
  auto fn = [](Span w, std::size_t c) -> EquivariantOracle::Answer {
    if (w[c] == 0) return Symbol{0};
    const auto r = nearest_right(w, c, [](Symbol s) { return s != 0; });
    if (!r) return std::nullopt;
    return parity_flip(w[c], *r - c);
  };
  return EquivariantOracle("example:5.4", x, x, std::move(fn));
}

EquivariantOracle example_5_5() {
  const auto x = full_shift(digits("012"));
  auto fn = [](Span w, std::size_t c) -> EquivariantOracle::Answer {
    if (w[c] == 0) return Symbol{0};
    const auto nz = [](Symbol s) { return s != 0; };
    const auto l = nearest_left(w, c, nz);
    const auto r = nearest_right(w, c, nz);
    if (l && r) return parity_flip(w[c], std::min(c - *l, *r - c));
    // The hidden side is at distance at least (visible zeros) + 1.
    if (l && c - *l <= w.size() - c) return parity_flip(w[c], c - *l);
    if (r && *r - c <= c + 1) return parity_flip(w[c], *r - c);
    return std::nullopt;
  };
  return EquivariantOracle("example:5.5", x, x, std::move(fn));
}

std::optional<EquivariantOracle> builtin_oracle(std::string_view name) {
  if (name.starts_with("example:")) name.remove_prefix(8);
  if (name == "5.1") return example_5_1();
  if (name == "5.2") return example_5_2();
  if (name == "5.3") return example_5_3();
  if (name == "5.4") return example_5_4();
  if (name == "5.5") return example_5_5();
  if (name == "5.2-inverse") return example_5_2_inverse();
  return std::nullopt;
}

}  // namespace symdyn
