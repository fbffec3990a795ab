#include "symdyn/codes.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "symdyn/analysis.hpp"

namespace symdyn {

SlidingBlockCode::SlidingBlockCode(Alphabet domain, Alphabet codomain, std::size_t memory, std::size_t anticipation,
                                   Rule rule)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      memory_(memory),
      anticipation_(anticipation),
      rule_(std::move(rule)) {
  for (const auto& [w, out] : rule_) {
    if (w.size() != window_length()) throw Error("rule window has the wrong length");
    if (!domain_.contains(w)) throw Error("rule window uses a symbol outside the domain alphabet");
    if (out >= codomain_.size()) throw Error("rule output outside the codomain alphabet");
  }
}

SlidingBlockCode SlidingBlockCode::from_function(Alphabet domain, Alphabet codomain, std::size_t memory,
                                                 std::size_t anticipation,
                                                 const std::function<Symbol(std::span<const Symbol>)>& f,
                                                 const ShiftPresentation* shift) {
  const std::size_t len = memory + 1 + anticipation;
  Rule rule;
  Word w;
  std::function<void()> grow = [&] {
    if (shift && !word_in_language(*shift, w)) return;
    if (w.size() == len) {
      rule.emplace(w, f(w));
      if (rule.size() > kDefaultSubsetCap) throw Error("rule table too large");
      return;
    }
    for (Symbol a = 0; a < domain.size(); ++a) {
      w.push_back(a);
      grow();
      w.pop_back();
    }
  };
  grow();
  return SlidingBlockCode(std::move(domain), std::move(codomain), memory, anticipation, std::move(rule));
}

SlidingBlockCode SlidingBlockCode::identity(const Alphabet& a) {
  return from_function(a, a, 0, 0, [](std::span<const Symbol> w) { return w[0]; });
}

SlidingBlockCode SlidingBlockCode::permutation(const Alphabet& a, const std::vector<Symbol>& perm) {
  if (perm.size() != a.size()) throw Error("permutation size differs from the alphabet");
  return from_function(a, a, 0, 0, [&](std::span<const Symbol> w) { return perm.at(w[0]); });
}

SlidingBlockCode SlidingBlockCode::shift_map(const Alphabet& a) {
  return from_function(a, a, 0, 1, [](std::span<const Symbol> w) { return w[1]; });
}

std::optional<Symbol> SlidingBlockCode::lookup(std::span<const Symbol> window) const {
  const auto it = rule_.find(Word(window.begin(), window.end()));
  if (it == rule_.end()) return std::nullopt;
  return it->second;
}

Word SlidingBlockCode::apply_to_word(std::span<const Symbol> w) const {
  Word out;
  if (w.size() < window_length()) return out;
  for (std::size_t i = 0; i + window_length() <= w.size(); ++i) {
    const auto s = lookup(w.subspan(i, window_length()));
    if (!s) throw Error("admissible word missing from the rule table: " + domain_.format(w.subspan(i, window_length())));
    out.push_back(*s);
  }
  return out;
}

PointPresentation apply_code(const SlidingBlockCode& c, const PointPresentation& p) {
  const Index m = static_cast<Index>(c.memory());
  const Index a = static_cast<Index>(c.anticipation());
  auto image = [&](Index first, Index last) {
    if (last < first) return Word{};
    return c.apply_to_word(p.window(first - m, last + a).contents);
  };
  const Index right_len = static_cast<Index>(p.right_tail().size());
  if (p.sidedness() == Sidedness::one) {
    if (m != 0) throw Error("one-sided points need a code without memory");
    const Index last = p.core_last();
    return PointPresentation::one_sided(image(0, last), image(last + 1, last + right_len));
  }
  const Index first = std::min(p.core_first() - a, Index{0});
  const Index last = std::max(p.core_last() + m, Index{0});
  const Index left_len = static_cast<Index>(p.left_tail().size());
  return PointPresentation::two_sided(image(first - left_len, first - 1), image(first, last),
                                      image(last + 1, last + right_len), -first);
}

SlidingBlockCode compose(const SlidingBlockCode& c1, const SlidingBlockCode& c2) {
  if (!(c1.codomain() == c2.domain())) throw Error("compose: codomain of the first code differs from the domain of the second");
  const std::size_t memory = c1.memory() + c2.memory();
  const std::size_t anticipation = c1.anticipation() + c2.anticipation();
  const std::size_t len = memory + 1 + anticipation;
  const std::size_t len1 = c1.window_length();
  SlidingBlockCode::Rule rule;
  Word w;
  std::function<void()> grow = [&] {
    if (w.size() >= len1 && !c1.lookup(std::span<const Symbol>(w).last(len1))) return;
    if (w.size() == len) {
      const Word mid = c1.apply_to_word(w);
      if (const auto s = c2.lookup(mid)) rule.emplace(w, *s);
      return;
    }
    for (Symbol a = 0; a < c1.domain().size(); ++a) {
      w.push_back(a);
      grow();
      w.pop_back();
    }
  };
  grow();
  return SlidingBlockCode(c1.domain(), c2.codomain(), memory, anticipation, std::move(rule));
}

ShiftPresentation image_presentation(const SlidingBlockCode& c, const ShiftPresentation& x) {
  if (!(c.domain() == x.alphabet())) throw Error("code domain alphabet differs from the shift alphabet");
  const auto& g = x.graph();
  const std::size_t span_edges = c.window_length() - 1;
  // A state is a path of span_edges edges, keyed by its start state and edge indices.
  using Path = std::vector<std::size_t>;
  std::map<Path, State> ids;
  std::vector<Path> paths;
  std::vector<Path> frontier;
  for (State q = 0; q < g.state_count(); ++q) frontier.push_back({q});
  for (std::size_t step = 0; step < span_edges; ++step) {
    std::vector<Path> next;
    for (const Path& p : frontier) {
      const State end = p.size() == 1 ? static_cast<State>(p[0]) : g.edges()[p.back()].to;
      for (std::size_t i : g.out_edges(end)) {
        Path ext = p;
        ext.push_back(i);
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
    if (frontier.size() > kDefaultSubsetCap) throw Error("image presentation too large");
  }
  for (Path& p : frontier) {
    ids.emplace(p, static_cast<State>(paths.size()));
    paths.push_back(std::move(p));
  }
  std::vector<Edge> edges;
  Word labels;
  for (std::size_t id = 0; id < paths.size(); ++id) {
    const Path& p = paths[id];
    const State end = p.size() == 1 ? static_cast<State>(p[0]) : g.edges()[p.back()].to;
    labels.clear();
    for (std::size_t k = 1; k < p.size(); ++k) labels.push_back(g.edges()[p[k]].label);
    for (std::size_t i : g.out_edges(end)) {
      labels.push_back(g.edges()[i].label);
      const auto out = c.lookup(labels);
      if (!out) throw Error("admissible word missing from the rule table: " + x.alphabet().format(labels));
      labels.pop_back();
      Path suffix;
      if (p.size() == 1) {
        suffix = {g.edges()[i].to};
      } else {
        suffix.push_back(g.edges()[p[1]].to);
        suffix.insert(suffix.end(), p.begin() + 2, p.end());
        suffix.push_back(i);
      }
      edges.push_back({static_cast<State>(id), *out, ids.at(suffix)});
    }
  }
  return ShiftPresentation(LabeledGraph(c.codomain(), paths.size(), std::move(edges)), x.sidedness(),
                           Provenance::derived);
}

ContainmentResult code_maps_into(const SlidingBlockCode& c, const ShiftPresentation& x, const ShiftPresentation& y) {
  if (!(c.codomain() == y.alphabet())) throw Error("code codomain alphabet differs from the target shift alphabet");
  ContainmentResult r;
  if (x.empty()) return r;
  r.witness = language_difference(image_presentation(c, x), y);
  r.contained = !r.witness;
  return r;
}

SlidingBlockCode higher_block_code(const ShiftPresentation& x, std::size_t m) {
  if (m == 0) throw Error("higher block code needs m >= 1");
  std::set<Word> blocks;
  Word w;
  std::function<void()> grow = [&] {
    if (!word_in_language(x, w)) return;
    if (w.size() == m) {
      blocks.insert(w);
      return;
    }
    for (Symbol a = 0; a < x.alphabet().size(); ++a) {
      w.push_back(a);
      grow();
      w.pop_back();
    }
  };
  grow();
  std::vector<std::string> tokens;
  SlidingBlockCode::Rule rule;
  for (const Word& b : blocks) {
    std::string t;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i > 0 && !x.alphabet().compact()) t += '.';
      t += x.alphabet().token(b[i]);
    }
    rule.emplace(b, static_cast<Symbol>(tokens.size()));
    tokens.push_back(std::move(t));
  }
  return SlidingBlockCode(x.alphabet(), Alphabet(std::move(tokens)), 0, m - 1, std::move(rule));
}

EquivariantOracle::EquivariantOracle(std::string name, ShiftPresentation domain, ShiftPresentation codomain,
                                     QueryFn fn, std::optional<SlidingBlockCode> code)
    : name_(std::move(name)),
      domain_(determinize_and_minimize(domain)),
      codomain_(determinize_and_minimize(codomain)),
      fn_(std::move(fn)),
      code_(std::move(code)) {}

EquivariantOracle::Answer EquivariantOracle::query(std::span<const Symbol> window, std::size_t centre) const {
  if (centre >= window.size()) throw Error("oracle centre outside the window");
  return fn_(window, centre);
}

std::optional<Word> EquivariantOracle::query_range(std::span<const Symbol> window, std::size_t first,
                                                   std::size_t last) const {
  Word out;
  for (std::size_t i = first; i <= last; ++i) {
    const auto s = query(window, i);
    if (!s) return std::nullopt;
    out.push_back(*s);
  }
  return out;
}

ShiftPresentation full_shift(const Alphabet& a, Sidedness sided) {
  std::vector<Edge> edges;
  for (Symbol s = 0; s < a.size(); ++s) edges.push_back({0, s, 0});
  return ShiftPresentation(LabeledGraph(a, 1, std::move(edges)), sided, Provenance::explicit_graph);
}

EquivariantOracle oracle_from_code(const SlidingBlockCode& c, const ShiftPresentation& domain,
                                   const ShiftPresentation& codomain) {
  auto fn = [c](std::span<const Symbol> w, std::size_t centre) -> EquivariantOracle::Answer {
    if (centre < c.memory() || centre + c.anticipation() >= w.size()) return std::nullopt;
    const auto s = c.lookup(w.subspan(centre - c.memory(), c.window_length()));
    if (!s) throw Error("window inconsistent with the code's domain");
    return s;
  };
  return EquivariantOracle("code", domain, codomain, std::move(fn), c);
}

EquivariantOracle oracle_from_code(const SlidingBlockCode& c) {
  return oracle_from_code(c, full_shift(c.domain()), full_shift(c.codomain()));
}

namespace {

std::vector<PeriodicWord> tail_orbits(const PointPresentation& p) {
  std::vector<PeriodicWord> out{PeriodicWord(p.right_tail())};
  if (p.sidedness() == Sidedness::two) out.emplace_back(p.left_tail());
  return out;
}

bool avoided(const std::vector<PeriodicWord>& avoid, const Word& tail) {
  const PeriodicWord w(tail);
  return std::any_of(avoid.begin(), avoid.end(), [&](const PeriodicWord& a) { return a.same_orbit(w); });
}

/// State sequence of some path labeled `w` from `start`, if one exists.
std::optional<std::vector<State>> find_path(const LabeledGraph& g, State start, std::span<const Symbol> w) {
  std::vector<std::vector<State>> layers{{start}};
  for (Symbol a : w) {
    const Symbol one[1] = {a};
    layers.push_back(follow(g, layers.back(), one));
    if (layers.back().empty()) return std::nullopt;
  }
  std::vector<State> path(w.size() + 1);
  path.back() = layers.back().front();
  for (std::size_t k = w.size(); k-- > 0;) {
    const State to = path[k + 1];
    bool found = false;
    for (State q : layers[k]) {
      for (std::size_t i : g.out_edges(q)) {
        if (g.edges()[i].label == w[k] && g.edges()[i].to == to) {
          path[k] = q;
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  return path;
}

/// Edge labels along a shortest path between two states (forward), if any.
std::optional<Word> path_labels(const LabeledGraph& g, State from, State to, bool nonempty) {
  std::vector<std::int64_t> parent_edge(g.state_count(), -1);
  std::vector<char> seen(g.state_count(), 0);
  std::deque<State> queue;
  if (!nonempty) {
    if (from == to) return Word{};
    seen[from] = 1;
  }
  queue.push_back(from);
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (std::size_t i : g.out_edges(q)) {
      const State r = g.edges()[i].to;
      if (seen[r]) continue;
      seen[r] = 1;
      parent_edge[r] = static_cast<std::int64_t>(i);
      if (r == to) {
        Word labels;
        State cur = to;
        do {
          const Edge& e = g.edges()[static_cast<std::size_t>(parent_edge[cur])];
          labels.push_back(e.label);
          cur = e.from;
        } while (cur != from);
        std::reverse(labels.begin(), labels.end());
        return labels;
      }
      queue.push_back(r);
    }
  }
  return std::nullopt;
}

struct TailOption {
  Word connector;  // labels between the cycle and the context
  Word cycle;      // tail root
};

/// Cycles through v, one per out-edge of v.
std::vector<Word> cycles_at(const LabeledGraph& g, State v) {
  std::vector<Word> out;
  for (std::size_t i : g.out_edges(v)) {
    auto back = path_labels(g, g.edges()[i].to, v, false);
    if (!back) continue;
    Word c{g.edges()[i].label};
    c.insert(c.end(), back->begin(), back->end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<TailOption> right_options(const LabeledGraph& g, State from, std::size_t limit) {
  std::vector<TailOption> out;
  for (State v = 0; v < g.state_count() && out.size() < limit; ++v) {
    auto conn = path_labels(g, from, v, false);
    if (!conn) continue;
    for (Word& c : cycles_at(g, v)) out.push_back({*conn, std::move(c)});
  }
  return out;
}

std::vector<TailOption> left_options(const LabeledGraph& g, State to, std::size_t limit) {
  std::vector<TailOption> out;
  for (State v = 0; v < g.state_count() && out.size() < limit; ++v) {
    auto conn = path_labels(g, v, to, false);
    if (!conn) continue;
    for (Word& c : cycles_at(g, v)) out.push_back({*conn, std::move(c)});
  }
  return out;
}

}  // namespace

std::optional<PointPresentation> realize_context(const ShiftPresentation& x, std::span<const Symbol> word,
                                                 std::size_t origin, const std::vector<PeriodicWord>& avoid) {
  const auto& g = x.graph();
  if (x.empty()) return std::nullopt;
  if (x.sidedness() == Sidedness::one && origin != 0) throw Error("one-sided contexts start at index 0");
  std::optional<PointPresentation> fallback;
  std::size_t starts_tried = 0;
  for (State q0 : precede(g, all_states(g), word)) {
    if (++starts_tried > 4) break;
    const auto path = find_path(g, q0, word);
    if (!path) continue;
    const State q1 = path->back();
    const auto rights = right_options(g, q1, 8);
    if (x.sidedness() == Sidedness::one) {
      for (const auto& r : rights) {
        Word core(word.begin(), word.end());
        core.insert(core.end(), r.connector.begin(), r.connector.end());
        auto p = PointPresentation::one_sided(std::move(core), r.cycle);
        if (is_periodic(p)) continue;
        if (!avoided(avoid, r.cycle)) return p;
        if (!fallback) fallback = std::move(p);
      }
      continue;
    }
    const auto lefts = left_options(g, q0, 8);
    for (const auto& l : lefts) {
      for (const auto& r : rights) {
        Word core = l.connector;
        core.insert(core.end(), word.begin(), word.end());
        core.insert(core.end(), r.connector.begin(), r.connector.end());
        auto p = PointPresentation::two_sided(l.cycle, std::move(core), r.cycle,
                                              static_cast<Index>(l.connector.size() + origin));
        if (is_periodic(p)) continue;
        if (!avoided(avoid, l.cycle) && !avoided(avoid, r.cycle)) return p;
        if (!fallback) fallback = std::move(p);
      }
    }
  }
  return fallback;
}

namespace {

void words_up_to(std::size_t k, std::size_t max_len, std::vector<Word>& out) {
  out.push_back({});
  std::size_t from = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i) {
      for (Symbol a = 0; a < k; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    from = to;
  }
}

}  // namespace

std::optional<ContinuityWitness> continuity_probe(const EquivariantOracle& o, const PointPresentation& target,
                                                  Index coord, std::size_t n_max, std::size_t context) {
  const ShiftPresentation& x = o.domain();
  if (target.sidedness() != x.sidedness()) throw Error("continuity_probe: sidedness mismatch");
  if (!contains_point(x, target)) throw Error("continuity_probe: target not in the domain shift");
  const bool two = target.sidedness() == Sidedness::two;
  if (!two && coord < 0) throw Error("continuity_probe: negative coordinate on a one-sided point");
  std::vector<Word> exts;
  words_up_to(x.alphabet().size(), context, exts);
  const std::vector<Word> no_left{Word{}};
  const auto avoid = tail_orbits(target);
  ContinuityWitness witness{target, coord, {}};
  const std::size_t n_min = static_cast<std::size_t>(std::max<Index>(1, coord < 0 ? -coord : coord));
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const Index radius = static_cast<Index>(n);
    const Word base = two ? target.window(-radius, radius).contents : target.window(0, radius).contents;
    std::map<Symbol, std::vector<FamilyMember>> by_image;
    for (const Word& l : two ? exts : no_left) {
      for (const Word& r : exts) {
        Word w = l;
        w.insert(w.end(), base.begin(), base.end());
        w.insert(w.end(), r.begin(), r.end());
        if (!word_in_language(x, w)) continue;
        const std::size_t zero = l.size() + (two ? n : 0);
        const std::size_t centre = static_cast<std::size_t>(static_cast<Index>(zero) + coord);
        const auto ans = o.query(w, centre);
        if (!ans) continue;
        auto& bucket = by_image[*ans];
        if (bucket.size() < 4) bucket.push_back({w, centre, *ans, target});
      }
    }
    std::vector<FamilyMember> realized;
    for (auto& [sym, members] : by_image) {
      for (auto& m : members) {
        const std::size_t zero = m.centre - static_cast<std::size_t>(coord);
        if (auto p = realize_context(x, m.window, zero, avoid)) {
          m.realization = std::move(*p);
          realized.push_back(m);
          break;
        }
      }
      if (realized.size() == 2) break;
    }
    if (realized.size() < 2) return std::nullopt;
    witness.pairs.push_back({n, realized[0], realized[1]});
  }
  return witness;
}

}  // namespace symdyn
