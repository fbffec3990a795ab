#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symdyn/core.hpp"
#include "symdyn/presentations.hpp"

namespace symdyn {

/// Sliding block code x |-> y with y_i = rule(x_{[i-memory, i+anticipation]}).
class SlidingBlockCode {
 public:
  using Rule = std::map<Word, Symbol>;

  SlidingBlockCode(Alphabet domain, Alphabet codomain, std::size_t memory, std::size_t anticipation, Rule rule);

  /// Tabulates `f` on every word of length memory+1+anticipation over the domain
  /// alphabet (or only on the admissible words of `shift` when given).
  static SlidingBlockCode from_function(Alphabet domain, Alphabet codomain, std::size_t memory,
                                        std::size_t anticipation,
                                        const std::function<Symbol(std::span<const Symbol>)>& f,
                                        const ShiftPresentation* shift = nullptr);

  static SlidingBlockCode identity(const Alphabet& a);
  /// Symbol permutation: position i of the alphabet maps to perm[i].
  static SlidingBlockCode permutation(const Alphabet& a, const std::vector<Symbol>& perm);
  /// The left shift sigma as a code (anticipation 1).
  static SlidingBlockCode shift_map(const Alphabet& a);

  const Alphabet& domain() const { return domain_; }
  const Alphabet& codomain() const { return codomain_; }
  std::size_t memory() const { return memory_; }
  std::size_t anticipation() const { return anticipation_; }
  std::size_t window_length() const { return memory_ + 1 + anticipation_; }
  const Rule& rule() const { return rule_; }

  /// Output symbol for a full window; nullopt if the window is not in the table.
  std::optional<Symbol> lookup(std::span<const Symbol> window) const;
  /// Image of every position whose window fits inside `w` (length |w| - m - a).
  Word apply_to_word(std::span<const Symbol> w) const;

 private:
  Alphabet domain_;
  Alphabet codomain_;
  std::size_t memory_;
  std::size_t anticipation_;
  Rule rule_;
};

PointPresentation apply_code(const SlidingBlockCode& c, const PointPresentation& p);

/// c2 after c1.
SlidingBlockCode compose(const SlidingBlockCode& c1, const SlidingBlockCode& c2);

/// Presentation of c(X): the higher-block graph of X relabeled by the rule.
ShiftPresentation image_presentation(const SlidingBlockCode& c, const ShiftPresentation& x);

struct ContainmentResult {
  bool contained = true;
  std::optional<Word> witness;  // image word not in Y
};

ContainmentResult code_maps_into(const SlidingBlockCode& c, const ShiftPresentation& x, const ShiftPresentation& y);

/// x |-> (x_{[i, i+m-1]})_i onto the m-block presentation of X.
SlidingBlockCode higher_block_code(const ShiftPresentation& x, std::size_t m);

/// Partial local rule of a shift-commuting map defined on the aperiodic part of a
/// subshift. Answers are monotone in the window and depend only on the window
/// contents relative to the queried centre.
class EquivariantOracle {
 public:
  using Answer = std::optional<Symbol>;
  using QueryFn = std::function<Answer(std::span<const Symbol>, std::size_t)>;

  EquivariantOracle(std::string name, ShiftPresentation domain, ShiftPresentation codomain, QueryFn fn,
                    std::optional<SlidingBlockCode> code = std::nullopt);

  Answer query(std::span<const Symbol> window, std::size_t centre) const;
  /// Image symbols at window positions [first, last], if all are determined.
  std::optional<Word> query_range(std::span<const Symbol> window, std::size_t first, std::size_t last) const;

  const std::string& name() const { return name_; }
  const ShiftPresentation& domain() const { return domain_; }
  const ShiftPresentation& codomain() const { return codomain_; }
  Sidedness sidedness() const { return domain_.sidedness(); }
  /// Set when the oracle is the restriction of a sliding block code.
  const std::optional<SlidingBlockCode>& code() const { return code_; }

 private:
  std::string name_;
  ShiftPresentation domain_;
  ShiftPresentation codomain_;
  QueryFn fn_;
  std::optional<SlidingBlockCode> code_;
};

/// Full shift over an alphabet.
ShiftPresentation full_shift(const Alphabet& a, Sidedness sided = Sidedness::two);

EquivariantOracle oracle_from_code(const SlidingBlockCode& c);
EquivariantOracle oracle_from_code(const SlidingBlockCode& c, const ShiftPresentation& domain,
                                   const ShiftPresentation& codomain);

// The five counterexample maps. Each oracle throws Error on a window that
// visibly leaves its domain language.

/// Sofic shift ((0*+1*)2(0*+1*)3)*: a run sitting in a 2..3 gap is flipped 0<->1.
EquivariantOracle example_5_1();
/// Even shift to (2(01)*)*: 1 -> 2, 0^{2n} runs -> (01)^n.
EquivariantOracle example_5_2();
/// Full {0,2}-shift to full {0,1,2}-shift: 1 at the midpoint of each 2 0^n 2 gap
/// (left of the two central cells for even gaps).
EquivariantOracle example_5_3();
/// One-sided full {0,1,2}-shift: a -> 3-a when the nearest nonzero to the right is at odd distance.
EquivariantOracle example_5_4();
/// Two-sided variant using the nearest nonzero on either side.
EquivariantOracle example_5_5();

/// Inverse rewriting of example_5_2 ((01)^n 2 -> 0^{2n} 1) as an oracle on (2(01)*)*.
EquivariantOracle example_5_2_inverse();

/// Oracle addressed by `example:5.1` ... `example:5.5`.
std::optional<EquivariantOracle> builtin_oracle(std::string_view name);

struct FamilyMember {
  Word window;
  std::size_t centre = 0;  // window index of the probed coordinate
  Symbol image = 0;
  PointPresentation realization;
};

struct WitnessPair {
  std::size_t n = 0;
  FamilyMember first;
  FamilyMember second;
};

/// Two families of domain points agreeing with the target on growing windows
/// whose determined images differ at a fixed coordinate.
struct ContinuityWitness {
  PointPresentation target;
  Index coordinate = 0;
  std::vector<WitnessPair> pairs;
};

/// Searches, for every n in [1, n_max], for two in-shift points agreeing with the
/// target on [-n, n] ([0, n] one-sided) whose images differ at `coord`. Returns a
/// witness only if such a pair exists for every n.
std::optional<ContinuityWitness> continuity_probe(const EquivariantOracle& o, const PointPresentation& target,
                                                  Index coord, std::size_t n_max, std::size_t context = 3);

/// An aperiodic in-shift point containing `word` with its letter `origin` at index 0.
/// Tails avoid the orbits listed in `avoid` when possible.
std::optional<PointPresentation> realize_context(const ShiftPresentation& x, std::span<const Symbol> word,
                                                 std::size_t origin, const std::vector<PeriodicWord>& avoid = {});

}  // namespace symdyn
