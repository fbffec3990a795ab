#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symdyn/core.hpp"

namespace symdyn {

using State = std::uint32_t;
inline constexpr std::int32_t kNoState = -1;

struct Edge {
  State from;
  Symbol label;
  State to;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite directed graph with symbol-labeled edges.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(Alphabet alphabet, std::size_t state_count, std::vector<Edge> edges);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return state_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool empty() const { return state_count_ == 0; }

  /// Indices into edges(), grouped by source / target.
  const std::vector<std::size_t>& out_edges(State q) const { return out_[q]; }
  const std::vector<std::size_t>& in_edges(State q) const { return in_[q]; }

  /// True when no state has two out-edges with the same label.
  bool right_resolving() const;
  /// Successor under `a` in a right-resolving graph, or kNoState.
  std::int32_t next(State q, Symbol a) const { return delta_.empty() ? kNoState : delta_[q * alphabet_.size() + a]; }

  /// Iteratively drops states lacking an incoming or an outgoing edge.
  LabeledGraph trimmed() const;
  LabeledGraph reversed() const;
  LabeledGraph restricted(std::span<const State> keep) const;

 private:
  Alphabet alphabet_;
  std::size_t state_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::int32_t> delta_;  // filled when right-resolving
};

/// Tarjan components, each sorted ascending.
std::vector<std::vector<State>> strongly_connected_components(const LabeledGraph& g);

enum class Provenance { forbidden_words, regex, explicit_graph, derived };

/// A subshift presented by the bi-infinite walks of an essential labeled graph.
/// One-sided shifts reuse the same graph: X_N is the set of right-infinite label paths.
class ShiftPresentation {
 public:
  ShiftPresentation() = default;
  ShiftPresentation(LabeledGraph graph, Sidedness sided, Provenance provenance);

  const LabeledGraph& graph() const { return graph_; }
  const Alphabet& alphabet() const { return graph_.alphabet(); }
  Sidedness sidedness() const { return sided_; }
  Provenance provenance() const { return provenance_; }
  bool deterministic() const { return deterministic_; }
  bool minimal() const { return minimal_; }
  bool empty() const { return graph_.empty(); }

  ShiftPresentation with_sidedness(Sidedness s) const;

  /// Marks a presentation produced by determinize_and_minimize.
  static ShiftPresentation minimal_form(LabeledGraph graph, Sidedness sided, Provenance provenance);

 private:
  LabeledGraph graph_;
  Sidedness sided_ = Sidedness::two;
  Provenance provenance_ = Provenance::explicit_graph;
  bool deterministic_ = false;
  bool minimal_ = false;
};

/// De Bruijn presentation of the SFT avoiding `forbidden`. Returns an empty
/// presentation when every state is trimmed away.
ShiftPresentation sft_from_forbidden(const Alphabet& alphabet, const std::vector<Word>& forbidden,
                                     Sidedness sided = Sidedness::two);

/// Presentation of the smallest subshift whose language contains E*. Supports
/// literals, concatenation, `+` or `|` for union, `*`, and parentheses.
ShiftPresentation shift_from_regex(const Alphabet& alphabet, std::string_view expression,
                                   Sidedness sided = Sidedness::two);

ShiftPresentation shift_from_graph(LabeledGraph graph, Sidedness sided = Sidedness::two);

inline constexpr std::size_t kDefaultSubsetCap = std::size_t{1} << 20;

/// Right-resolving presentation with pairwise distinct follower languages. When a
/// unique terminal component presents the same shift it is kept alone, which
/// yields the minimal right-resolving cover of an irreducible sofic shift.
ShiftPresentation determinize_and_minimize(const ShiftPresentation& p, std::size_t cap = kDefaultSubsetCap);

bool word_in_language(const ShiftPresentation& p, std::span<const Symbol> w);

/// States reachable by reading `w` from some state of `from`.
std::vector<State> follow(const LabeledGraph& g, std::span<const State> from, std::span<const Symbol> w);
/// States from which `w` can be read ending in `to`.
std::vector<State> precede(const LabeledGraph& g, std::span<const State> to, std::span<const Symbol> w);
std::vector<State> all_states(const LabeledGraph& g);

bool contains_point(const ShiftPresentation& p, const PointPresentation& x);

/// Shortest word in the language of `a` that is not in the language of `b`, if any.
std::optional<Word> language_difference(const ShiftPresentation& a, const ShiftPresentation& b,
                                        std::size_t cap = kDefaultSubsetCap);
bool same_language(const ShiftPresentation& a, const ShiftPresentation& b);

/// (X, sigma^m) presented over the alphabet of m-blocks, with the point bijection.
class PowerRecoding {
 public:
  PowerRecoding(const ShiftPresentation& p, std::size_t m);

  const ShiftPresentation& shift() const { return shift_; }
  std::size_t block_length() const { return m_; }
  const Alphabet& base_alphabet() const { return base_; }
  const Word& block(Symbol s) const { return blocks_.at(s); }

  /// y_i = x_{[im, im+m-1]}.
  PointPresentation encode(const PointPresentation& x) const;
  PointPresentation decode(const PointPresentation& y) const;

 private:
  ShiftPresentation shift_;
  std::size_t m_;
  Alphabet base_;
  std::vector<Word> blocks_;
};

PowerRecoding power_recode(const ShiftPresentation& p, std::size_t m);

}  // namespace symdyn
