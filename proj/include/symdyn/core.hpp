#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/error.hpp"

namespace symdyn {

using Symbol = std::uint16_t;
using Word = std::vector<Symbol>;
using Index = std::int64_t;

enum class Sidedness { one, two };

std::string_view to_string(Sidedness s);

/// Ordered finite set of symbol tokens. Symbols are indices into the token list.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(Symbol s) const { return tokens_.at(s); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<Symbol> find(std::string_view token) const;
  Symbol symbol(std::string_view token) const;

  /// True when every token is a single character, so words print without separators.
  bool compact() const { return compact_; }

  /// Parses a word. Whitespace separates tokens; in a compact alphabet adjacent
  /// characters are separate symbols as well.
  Word parse(std::string_view text) const;
  std::string format(std::span<const Symbol> word) const;

  bool contains(std::span<const Symbol> word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  bool compact_ = true;
};

/// Smallest d with w = (w[0,d))^{|w|/d}. Requires a non-empty word.
std::size_t primitive_root_length(std::span<const Symbol> w);

/// Offset k such that w rotated left by k is the lexicographically least rotation.
std::size_t least_rotation(std::span<const Symbol> w);

Word rotate_left(std::span<const Symbol> w, std::size_t k);

/// A primitive word standing for the periodic orbit it generates.
class PeriodicWord {
 public:
  /// Reduces `w` to its primitive root, keeping the given rotation.
  explicit PeriodicWord(Word w);

  const Word& primitive() const { return primitive_; }
  std::size_t period() const { return primitive_.size(); }
  /// Rotation taking `primitive()` to `canonical()`.
  std::size_t canonical_phase() const { return phase_; }
  Word canonical() const { return rotate_left(primitive_, phase_); }

  bool same_orbit(const PeriodicWord& other) const { return canonical() == other.canonical(); }
  friend bool operator==(const PeriodicWord& a, const PeriodicWord& b) { return a.primitive_ == b.primitive_; }
  friend bool operator<(const PeriodicWord& a, const PeriodicWord& b);

 private:
  Word primitive_;
  std::size_t phase_ = 0;
};

struct Window {
  Index first = 0;
  Index last = -1;
  Word contents;

  std::size_t length() const { return contents.size(); }
};

/// An eventually periodic point `u^{-inf} w v^{inf}` (two-sided) or `w v^{inf}`
/// (one-sided). Presentations are normalized on construction: tails are primitive,
/// the core is as short as possible, and index 0 lies inside the core (or, for a
/// one-sided point with empty core, at its left edge). Equal points compare equal.
class PointPresentation {
 public:
  static PointPresentation two_sided(Word left_tail, Word core, Word right_tail, Index origin);
  static PointPresentation one_sided(Word core, Word right_tail);
  /// The periodic point with `p.primitive()[0]` at index 0.
  static PointPresentation periodic(const PeriodicWord& p, Sidedness sided = Sidedness::two);

  Sidedness sidedness() const { return sided_; }
  const Word& left_tail() const { return left_; }
  const Word& core() const { return core_; }
  const Word& right_tail() const { return right_; }
  /// Position of index 0 within the core.
  Index origin() const { return origin_; }

  /// First and last index covered by the core.
  Index core_first() const { return -origin_; }
  Index core_last() const { return static_cast<Index>(core_.size()) - origin_ - 1; }

  Symbol at(Index i) const;
  Window window(Index first, Index last) const;

  std::optional<PeriodicWord> left_periodic() const;
  PeriodicWord right_periodic() const { return PeriodicWord(right_); }

  friend bool operator==(const PointPresentation&, const PointPresentation&) = default;

 private:
  PointPresentation() = default;
  void normalize();

  Sidedness sided_ = Sidedness::two;
  Word left_;
  Word core_;
  Word right_;
  Index origin_ = 0;
};

Window window_of(const PointPresentation& p, Index first, Index last);

PointPresentation shift_point(const PointPresentation& p, Index k);

/// Least period if the point is shift-periodic.
std::optional<std::size_t> is_periodic(const PointPresentation& p);

/// z with z_i = x_i (i < -l), s_i (-l <= i <= l), y_i (i > l). Membership of z in
/// a shift is not checked here.
PointPresentation splice(const PointPresentation& x, const PointPresentation& s,
                         const PointPresentation& y, Index ell);

/// Point literal syntax: `[u]^-inf w [v]^inf @k` (two-sided, index 0 at offset k
/// of w) or `w [v]^inf` (one-sided).
PointPresentation parse_point(std::string_view text, const Alphabet& alphabet);
std::string format_point(const PointPresentation& p, const Alphabet& alphabet);

}  // namespace symdyn
