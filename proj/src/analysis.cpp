#include "symdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

namespace symdyn {
namespace {

using StateMap = std::vector<std::int32_t>;

/// Applies `a` to a partial state map of a right-resolving graph.
StateMap step(const LabeledGraph& g, const StateMap& f, Symbol a) {
  StateMap out(f.size(), kNoState);
  for (std::size_t q = 0; q < f.size(); ++q) {
    if (f[q] != kNoState) out[q] = g.next(static_cast<State>(f[q]), a);
  }
  return out;
}

bool any_defined(const StateMap& f) {
  return std::any_of(f.begin(), f.end(), [](std::int32_t r) { return r != kNoState; });
}

/// True if the partial map has a cycle, i.e. the periodic point it reads lifts to the graph.
bool has_cycle(const StateMap& f) {
  const std::size_t n = f.size();
  for (std::size_t q = 0; q < n; ++q) {
    std::int32_t cur = f[q];
    for (std::size_t k = 0; k < n && cur != kNoState; ++k) {
      if (static_cast<std::size_t>(cur) == q) return true;
      cur = f[static_cast<std::size_t>(cur)];
    }
  }
  return false;
}

StateMap identity_map(std::size_t n) {
  StateMap f(n);
  std::iota(f.begin(), f.end(), 0);
  return f;
}

StateMap read_word(const LabeledGraph& g, std::span<const Symbol> w) {
  StateMap f = identity_map(g.state_count());
  for (Symbol a : w) f = step(g, f, a);
  return f;
}

/// Lyndon words of length n in the language, generated in lexicographic order
/// (Fredricksen-Kessler-Maiorana) with pruning on prefixes that leave the language.
class LyndonSearch {
 public:
  LyndonSearch(const LabeledGraph& g, std::size_t n) : g_(g), n_(n), word_(n + 1, 0), maps_(n + 1) {
    maps_[0] = identity_map(g.state_count());
  }

  std::vector<PeriodicWord> run() {
    if (g_.state_count() > 0) generate(1, 1);
    return std::move(out_);
  }

 private:
  void generate(std::size_t t, std::size_t p) {
    if (t > n_) {
      if (p == n_ && has_cycle(maps_[n_])) out_.emplace_back(Word(word_.begin() + 1, word_.end()));
      return;
    }
    const Symbol start = word_[t - p];
    for (std::size_t a = start; a < g_.alphabet().size(); ++a) {
      word_[t] = static_cast<Symbol>(a);
      maps_[t] = step(g_, maps_[t - 1], word_[t]);
      if (!any_defined(maps_[t])) continue;
      generate(t + 1, a == start ? p : t);
    }
  }

  const LabeledGraph& g_;
  std::size_t n_;
  Word word_;
  std::vector<StateMap> maps_;
  std::vector<PeriodicWord> out_;
};

std::vector<PeriodicWord> orbits_of(const LabeledGraph& g, std::size_t n_max) {
  std::vector<PeriodicWord> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto level = LyndonSearch(g, n).run();
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::size_t collapse_size(const LabeledGraph& g, std::span<const Symbol> w) {
  return follow(g, all_states(g), w).size();
}

/// Perron root bracket of an irreducible non-negative matrix via power iteration on I + A.
std::pair<double, double> perron_bracket(const Eigen::MatrixXd& a, double tolerance) {
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) + a;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  double lo = 1.0;
  double hi = b.rowwise().sum().maxCoeff() - 1.0;
  for (int iter = 0; iter < 1000000; ++iter) {
    const Eigen::VectorXd y = b * x;
    const Eigen::ArrayXd ratio = y.array() / x.array();
    lo = std::max(ratio.minCoeff() - 1.0, 1.0);
    hi = std::max(std::min(ratio.maxCoeff() - 1.0, hi), lo);
    if (std::log2(hi) - std::log2(lo) < tolerance) break;
    x = y / y.maxCoeff();
  }
  return {lo, hi};
}

}  // namespace

bool is_transitive(const ShiftPresentation& p) {
  const ShiftPresentation d = determinize_and_minimize(p);
  if (d.empty()) return false;
  return strongly_connected_components(d.graph()).size() == 1;
}

std::size_t graph_period(const LabeledGraph& g) {
  if (g.state_count() == 0) return 0;
  std::vector<std::int64_t> level(g.state_count(), -1);
  std::deque<State> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (std::size_t i : g.out_edges(q)) {
      const State r = g.edges()[i].to;
      if (level[r] < 0) {
        level[r] = level[q] + 1;
        queue.push_back(r);
      }
    }
  }
  std::int64_t d = 0;
  for (const Edge& e : g.edges()) {
    if (level[e.from] < 0 || level[e.to] < 0) continue;
    d = std::gcd(d, std::abs(level[e.from] + 1 - level[e.to]));
  }
  return static_cast<std::size_t>(d);
}

bool is_mixing(const ShiftPresentation& p) {
  if (!is_transitive(p)) throw Error("is_mixing requires a transitive shift");
  return graph_period(determinize_and_minimize(p).graph()) == 1;
}

EntropyEstimate entropy(const ShiftPresentation& p, double tolerance) {
  const ShiftPresentation d = determinize_and_minimize(p);
  if (d.empty()) throw Error("entropy of the empty shift");
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& comp : strongly_connected_components(d.graph())) {
    const LabeledGraph sub = d.graph().restricted(comp);
    if (sub.edges().empty()) continue;
    const auto [l, h] = perron_bracket(adjacency_matrix<double>(sub), tolerance);
    lo = std::max(lo, l);
    hi = std::max(hi, h);
  }
  EntropyEstimate e;
  e.lower = std::log2(lo);
  e.upper = std::log2(hi);
  e.value = lo == hi ? e.lower : 0.5 * (e.lower + e.upper);
  return e;
}

double count_words(const ShiftPresentation& p, std::size_t n) {
  const ShiftPresentation d = determinize_and_minimize(p);
  if (d.empty()) return n == 0 ? 1.0 : 0.0;
  const auto& g = d.graph();
  std::map<std::vector<State>, double> layer{{all_states(g), 1.0}};
  for (std::size_t i = 0; i < n; ++i) {
    std::map<std::vector<State>, double> next;
    for (const auto& [set, count] : layer) {
      for (Symbol a = 0; a < g.alphabet().size(); ++a) {
        const Symbol w[1] = {a};
        auto to = follow(g, set, w);
        if (!to.empty()) next[std::move(to)] += count;
      }
    }
    layer = std::move(next);
  }
  double total = 0.0;
  for (const auto& [set, count] : layer) total += count;
  return total;
}

std::vector<PeriodicWord> enumerate_periodic_orbits(const ShiftPresentation& p, std::size_t n_max) {
  if (n_max < 1) throw Error("orbit enumeration needs n_max >= 1");
  if (n_max > kMaxOrbitPeriod) throw Error("orbit enumeration bound exceeds " + std::to_string(kMaxOrbitPeriod));
  return orbits_of(determinize_and_minimize(p).graph(), n_max);
}

std::size_t fixed_point_count(const ShiftPresentation& p, std::size_t n) {
  std::size_t total = 0;
  for (const auto& orbit : enumerate_periodic_orbits(p, n)) {
    if (n % orbit.period() == 0) total += orbit.period();
  }
  return total;
}

bool contains_periodic(const ShiftPresentation& p, const PeriodicWord& s) {
  const ShiftPresentation d = determinize_and_minimize(p);
  if (!(d.alphabet().contains(s.primitive()))) return false;
  return has_cycle(read_word(d.graph(), s.primitive()));
}

bool is_synchronizing_word(const ShiftPresentation& p, std::span<const Symbol> w) {
  const ShiftPresentation d = determinize_and_minimize(p);
  return collapse_size(d.graph(), w) == 1;
}

SynchronizationResult periodic_point_is_synchronizing(const ShiftPresentation& p, const PeriodicWord& s) {
  const ShiftPresentation d = determinize_and_minimize(p);
  if (!contains_periodic(d, s)) throw Error("periodic point is not in the shift");
  const auto& g = d.graph();
  std::vector<State> cur = all_states(g);
  std::size_t k = 0;
  SynchronizationResult result;
  while (true) {
    if (cur.size() == 1) {
      result.synchronizing = true;
      result.repetitions = k;
      break;
    }
    auto next = follow(g, cur, s.primitive());
    if (next == cur) return result;
    cur = std::move(next);
    ++k;
  }
  const PointPresentation point = PointPresentation::periodic(s);
  const std::size_t bound = (k + 1) * s.period() + 1;
  for (std::size_t ell = 0; ell <= bound; ++ell) {
    const Index r = static_cast<Index>(ell);
    if (collapse_size(g, point.window(-r, r).contents) == 1) {
      result.ell = ell;
      return result;
    }
  }
  throw Error("internal: synchronizing block not found within the expected bound");
}

namespace {

/// w^inf is isolated among right-infinite label paths of the right-resolving graph.
bool isolated_right(const LabeledGraph& g, const PeriodicWord& w) {
  std::vector<State> t = all_states(g);
  while (true) {
    auto next = follow(g, t, w.primitive());
    if (next == t) break;
    t = std::move(next);
  }
  if (t.empty()) return false;
  const std::size_t len = 2 * g.state_count() + 2 * w.period();
  for (State start : t) {
    // Every reachable state must have a single continuation.
    std::vector<char> seen(g.state_count(), 0);
    std::deque<State> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const State q = queue.front();
      queue.pop_front();
      if (g.out_edges(q).size() != 1) return false;
      const State r = g.edges()[g.out_edges(q).front()].to;
      if (!seen[r]) {
        seen[r] = 1;
        queue.push_back(r);
      }
    }
    State q = start;
    for (std::size_t i = 0; i < len; ++i) {
      const Edge& e = g.edges()[g.out_edges(q).front()];
      if (e.label != w.primitive()[i % w.period()]) return false;
      q = e.to;
    }
  }
  return true;
}

}  // namespace

std::optional<PeriodicWord> has_isolated_periodic_point_one_sided(const ShiftPresentation& p, Direction direction,
                                                                   std::optional<std::size_t> period_bound) {
  ShiftPresentation base = direction == Direction::right
                               ? determinize_and_minimize(p)
                               : determinize_and_minimize(ShiftPresentation(p.graph().reversed(), p.sidedness(),
                                                                            Provenance::derived));
  if (base.empty()) return std::nullopt;
  const std::size_t bound =
      std::min(period_bound.value_or(std::max<std::size_t>(base.graph().state_count(), 1)), kMaxOrbitPeriod);
  for (const auto& orbit : orbits_of(base.graph(), bound)) {
    if (!isolated_right(base.graph(), orbit)) continue;
    if (direction == Direction::right) return orbit;
    Word rev = orbit.canonical();
    std::reverse(rev.begin(), rev.end());
    PeriodicWord back(rev);
    return PeriodicWord(back.canonical());
  }
  return std::nullopt;
}

std::string HypothesisReport::reason() const {
  if (!every_periodic_synchronizing) return "not_synchronizing";
  if (isolated_in_right_truncation) return "isolated_right";
  if (isolated_in_left_truncation) return "isolated_left";
  return "none";
}

std::optional<PeriodicWord> HypothesisReport::witness() const {
  if (non_synchronizing) return non_synchronizing;
  if (isolated_in_right_truncation) return isolated_in_right_truncation;
  return isolated_in_left_truncation;
}

HypothesisReport check_theorem_hypotheses(const ShiftPresentation& p, Sidedness scope, std::size_t period_bound) {
  HypothesisReport r;
  r.scope = scope;
  r.period_bound = period_bound;
  const ShiftPresentation d = determinize_and_minimize(p);
  if (d.empty()) throw Error("hypothesis check on the empty shift");
  r.transitive = is_transitive(d);
  r.mixing = r.transitive && graph_period(d.graph()) == 1;
  for (const auto& orbit : enumerate_periodic_orbits(d, period_bound)) {
    if (!periodic_point_is_synchronizing(d, orbit).synchronizing) {
      r.every_periodic_synchronizing = false;
      r.non_synchronizing = PeriodicWord(orbit.canonical());
      break;
    }
  }
  r.isolated_in_right_truncation = has_isolated_periodic_point_one_sided(d, Direction::right, period_bound);
  r.isolated_in_left_truncation = has_isolated_periodic_point_one_sided(d, Direction::left, period_bound);
  return r;
}

}  // namespace symdyn
