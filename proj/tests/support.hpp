#pragma once

// Brute-force oracles and random generators shared by the test binaries.

#include <random>
#include <set>

#include "symdyn/analysis.hpp"
#include "symdyn/codes.hpp"
#include "symdyn/definitions.hpp"
#include "symdyn/extension.hpp"

namespace symtest {

using namespace symdyn;

inline Alphabet digits(std::string_view s) {
  std::vector<std::string> t;
  for (char c : s) t.emplace_back(1, c);
  return Alphabet(std::move(t));
}

inline Word w(const Alphabet& a, std::string_view s) { return a.parse(s); }

inline ShiftPresentation golden() { return sft_from_forbidden(digits("01"), {Word{1, 1}}); }
inline ShiftPresentation even() { return shift_from_regex(digits("01"), "(1(00)*)*"); }
inline ShiftPresentation full(std::size_t k, Sidedness s = Sidedness::two) {
  return full_shift(digits(std::string("0123456789").substr(0, k)), s);
}
inline ShiftPresentation x51() { return shift_from_regex(digits("0123"), "((0*+1*)2(0*+1*)3)*"); }

/// Every word of length n over k symbols.
inline std::vector<Word> all_words(std::size_t k, std::size_t n) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const Word& u : out)
      for (Symbol a = 0; a < k; ++a) {
        Word v = u;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

inline bool has_factor(const Word& u, const Word& f) {
  return std::search(u.begin(), u.end(), f.begin(), f.end()) != u.end();
}

/// Even-shift language by inspection: every 0-run delimited on both sides has even length.
inline bool even_language(const Word& u) {
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != 1) continue;
    if (prev && (i - *prev - 1) % 2 == 1) return false;
    prev = i;
  }
  return true;
}

/// Random label walk of the given length in a presentation.
inline Word random_walk(const ShiftPresentation& p, std::size_t len, std::mt19937& rng) {
  const auto& g = p.graph();
  std::uniform_int_distribution<std::size_t> pick_state(0, g.state_count() - 1);
  State q = static_cast<State>(pick_state(rng));
  Word out;
  for (std::size_t i = 0; i < len; ++i) {
    const auto& outs = g.out_edges(q);
    std::uniform_int_distribution<std::size_t> pick(0, outs.size() - 1);
    const Edge& e = g.edges()[outs[pick(rng)]];
    out.push_back(e.label);
    q = e.to;
  }
  return out;
}

/// Random eventually periodic in-shift point with tails of period <= 3.
inline PointPresentation random_point(const ShiftPresentation& p, std::mt19937& rng, std::size_t core_len = 8) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Word core = random_walk(p, core_len, rng);
    std::uniform_int_distribution<std::size_t> org(0, core_len - 1);
    const std::size_t origin = p.sidedness() == Sidedness::two ? org(rng) : 0;
    if (auto x = realize_context(p, core, origin)) return *x;
  }
  throw Error("no random point");
}

/// sigma^n-fixed points of the SFT avoiding `forbidden`, by scanning u^r for forbidden factors.
inline std::size_t brute_fixed_points(std::size_t k, const std::vector<Word>& forbidden, std::size_t n) {
  std::size_t count = 0;
  for (const Word& u : all_words(k, n)) {
    Word uu;
    for (int r = 0; r < 8; ++r) uu.insert(uu.end(), u.begin(), u.end());
    bool ok = true;
    for (const Word& f : forbidden) ok = ok && !has_factor(uu, f);
    if (ok) ++count;
  }
  return count;
}

}  // namespace symtest
