#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symdyn/presentations.hpp"

namespace symdyn {

/// Adjacency matrix of a labeled graph, counting parallel edges.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency_matrix(const LabeledGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.state_count());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (const Edge& e : g.edges()) a(e.from, e.to) += Scalar(1);
  return a;
}

/// trace(A^n) of the presentation's adjacency matrix. Equals the number of
/// sigma^n-fixed points when label paths and points correspond one-to-one.
template <typename Scalar>
Scalar trace_of_power(const LabeledGraph& g, std::size_t n) {
  const auto a = adjacency_matrix<Scalar>(g);
  auto p = decltype(a)::Identity(a.rows(), a.cols()).eval();
  for (std::size_t i = 0; i < n; ++i) p = (p * a).eval();
  return p.trace();
}

bool is_transitive(const ShiftPresentation& p);

/// Requires a transitive shift.
bool is_mixing(const ShiftPresentation& p);

/// Period of a strongly connected graph (gcd of its cycle lengths); 0 for a graph without cycles.
std::size_t graph_period(const LabeledGraph& g);

struct EntropyEstimate {
  double value = 0.0;  // log2 of the Perron root
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
};

/// log2 of the Perron root of the minimal deterministic presentation, bracketed by
/// Collatz-Wielandt bounds until the bracket is narrower than `tolerance`.
EntropyEstimate entropy(const ShiftPresentation& p, double tolerance = 1e-9);

/// Number of words of length n in the language.
double count_words(const ShiftPresentation& p, std::size_t n);

inline constexpr std::size_t kMaxOrbitPeriod = 16;

/// Canonical representatives of every periodic orbit with least period <= n_max,
/// ordered by period then lexicographically.
std::vector<PeriodicWord> enumerate_periodic_orbits(const ShiftPresentation& p, std::size_t n_max);

/// Number of sigma^n-fixed points, from the orbit enumeration.
std::size_t fixed_point_count(const ShiftPresentation& p, std::size_t n);

bool contains_periodic(const ShiftPresentation& p, const PeriodicWord& s);

struct SynchronizationResult {
  bool synchronizing = false;
  /// Splice radius: the central block s_{[-l,l]} is a synchronizing word.
  std::optional<std::size_t> ell;
  /// Number of primitive-word repetitions after which the state set collapses.
  std::optional<std::size_t> repetitions;
};

SynchronizationResult periodic_point_is_synchronizing(const ShiftPresentation& p, const PeriodicWord& s);

/// True if every path labeled `w` in the minimal deterministic presentation ends in one state.
bool is_synchronizing_word(const ShiftPresentation& p, std::span<const Symbol> w);

enum class Direction { right, left };

/// First periodic orbit (period <= bound) whose one-sided point is isolated in
/// X_N (right) or X_{-N} (left). The bound defaults to the state count, capped at 16.
std::optional<PeriodicWord> has_isolated_periodic_point_one_sided(const ShiftPresentation& p, Direction direction,
                                                                   std::optional<std::size_t> period_bound = {});

struct HypothesisReport {
  Sidedness scope = Sidedness::two;
  std::size_t period_bound = 8;
  bool transitive = false;
  bool mixing = false;
  bool every_periodic_synchronizing = true;
  std::optional<PeriodicWord> non_synchronizing;
  std::optional<PeriodicWord> isolated_in_right_truncation;
  std::optional<PeriodicWord> isolated_in_left_truncation;

  bool holds() const {
    return every_periodic_synchronizing && !isolated_in_right_truncation && !isolated_in_left_truncation;
  }
  /// Short machine reason for the first failing hypothesis.
  std::string reason() const;
  std::optional<PeriodicWord> witness() const;
};

HypothesisReport check_theorem_hypotheses(const ShiftPresentation& p, Sidedness scope, std::size_t period_bound = 8);

}  // namespace symdyn
