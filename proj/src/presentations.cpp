#include "symdyn/presentations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace symdyn {

LabeledGraph::LabeledGraph(Alphabet alphabet, std::size_t state_count, std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)), state_count_(state_count), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.from >= state_count_ || e.to >= state_count_) throw Error("edge endpoint out of range");
    if (e.label >= alphabet_.size()) throw Error("edge label outside the alphabet");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  out_.assign(state_count_, {});
  in_.assign(state_count_, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[edges_[i].from].push_back(i);
    in_[edges_[i].to].push_back(i);
  }
  if (right_resolving()) {
    delta_.assign(state_count_ * alphabet_.size(), kNoState);
    for (const Edge& e : edges_) delta_[e.from * alphabet_.size() + e.label] = static_cast<std::int32_t>(e.to);
  }
}

bool LabeledGraph::right_resolving() const {
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].from == edges_[i - 1].from && edges_[i].label == edges_[i - 1].label) return false;
  }
  return true;
}

LabeledGraph LabeledGraph::restricted(std::span<const State> keep) const {
  std::vector<std::int64_t> index(state_count_, -1);
  std::size_t n = 0;
  for (State q : keep) {
    if (index[q] < 0) index[q] = static_cast<std::int64_t>(n++);
  }
  std::vector<Edge> edges;
  for (const Edge& e : edges_) {
    if (index[e.from] >= 0 && index[e.to] >= 0) {
      edges.push_back({static_cast<State>(index[e.from]), e.label, static_cast<State>(index[e.to])});
    }
  }
  return LabeledGraph(alphabet_, n, std::move(edges));
}

LabeledGraph LabeledGraph::trimmed() const {
  std::vector<char> alive(state_count_, 1);
  std::vector<std::size_t> indeg(state_count_, 0);
  std::vector<std::size_t> outdeg(state_count_, 0);
  for (const Edge& e : edges_) {
    ++outdeg[e.from];
    ++indeg[e.to];
  }
  std::deque<State> dead;
  for (State q = 0; q < state_count_; ++q) {
    if (indeg[q] == 0 || outdeg[q] == 0) {
      alive[q] = 0;
      dead.push_back(q);
    }
  }
  while (!dead.empty()) {
    const State q = dead.front();
    dead.pop_front();
    for (std::size_t i : out_[q]) {
      const State r = edges_[i].to;
      if (alive[r] && --indeg[r] == 0) {
        alive[r] = 0;
        dead.push_back(r);
      }
    }
    for (std::size_t i : in_[q]) {
      const State r = edges_[i].from;
      if (alive[r] && --outdeg[r] == 0) {
        alive[r] = 0;
        dead.push_back(r);
      }
    }
  }
  std::vector<State> keep;
  for (State q = 0; q < state_count_; ++q) {
    if (alive[q]) keep.push_back(q);
  }
  if (keep.size() == state_count_) return *this;
  return restricted(keep);
}

LabeledGraph LabeledGraph::reversed() const {
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const Edge& e : edges_) edges.push_back({e.to, e.label, e.from});
  return LabeledGraph(alphabet_, state_count_, std::move(edges));
}

std::vector<std::vector<State>> strongly_connected_components(const LabeledGraph& g) {
  const std::size_t n = g.state_count();
  std::vector<std::int64_t> number(n, -1);
  std::vector<std::int64_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<State> stack;
  std::vector<std::vector<State>> comps;
  std::int64_t counter = 0;
  struct Frame {
    State v;
    std::size_t next;
  };
  for (State root = 0; root < n; ++root) {
    if (number[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    number[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& outs = g.out_edges(f.v);
      if (f.next < outs.size()) {
        const State w = g.edges()[outs[f.next++]].to;
        if (number[w] < 0) {
          number[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], number[w]);
        }
        continue;
      }
      const State v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == number[v]) {
        std::vector<State> comp;
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

ShiftPresentation::ShiftPresentation(LabeledGraph graph, Sidedness sided, Provenance provenance)
    : graph_(graph.trimmed()), sided_(sided), provenance_(provenance) {
  deterministic_ = graph_.right_resolving();
}

ShiftPresentation ShiftPresentation::with_sidedness(Sidedness s) const {
  ShiftPresentation p = *this;
  p.sided_ = s;
  return p;
}

ShiftPresentation ShiftPresentation::minimal_form(LabeledGraph graph, Sidedness sided, Provenance provenance) {
  ShiftPresentation p(std::move(graph), sided, provenance);
  if (!p.deterministic_) throw Error("minimal presentation must be right-resolving");
  p.minimal_ = true;
  return p;
}

ShiftPresentation shift_from_graph(LabeledGraph graph, Sidedness sided) {
  return ShiftPresentation(std::move(graph), sided, Provenance::explicit_graph);
}

namespace {

bool has_forbidden_suffix(std::span<const Symbol> w, const std::vector<Word>& forbidden) {
  for (const Word& f : forbidden) {
    if (f.size() <= w.size() && std::equal(f.begin(), f.end(), w.end() - static_cast<std::ptrdiff_t>(f.size()))) {
      return true;
    }
  }
  return false;
}

}  // namespace

ShiftPresentation sft_from_forbidden(const Alphabet& alphabet, const std::vector<Word>& forbidden, Sidedness sided) {
  std::size_t m = 2;
  for (const Word& f : forbidden) {
    if (f.empty()) throw Error("forbidden words must be non-empty");
    if (!alphabet.contains(f)) throw Error("forbidden word uses a symbol outside the alphabet");
    m = std::max(m, f.size());
  }
  const std::size_t k = alphabet.size();
  const std::size_t order = m - 1;
  std::size_t count = 1;
  for (std::size_t i = 0; i < order; ++i) {
    count *= k;
    if (count > kDefaultSubsetCap) throw Error("de Bruijn graph too large");
  }
  // State index = base-k number of the (m-1)-word, most significant symbol first.
  auto decode = [&](std::size_t idx) {
    Word w(order);
    for (std::size_t i = order; i-- > 0;) {
      w[i] = static_cast<Symbol>(idx % k);
      idx /= k;
    }
    return w;
  };
  std::vector<char> admissible(count, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const Word w = decode(idx);
    bool ok = true;
    for (std::size_t end = 1; end <= w.size() && ok; ++end) {
      ok = !has_forbidden_suffix(std::span<const Symbol>(w.data(), end), forbidden);
    }
    admissible[idx] = ok;
  }
  std::vector<Edge> edges;
  for (std::size_t idx = 0; idx < count; ++idx) {
    if (!admissible[idx]) continue;
    Word w = decode(idx);
    w.push_back(0);
    for (Symbol a = 0; a < k; ++a) {
      w.back() = a;
      if (has_forbidden_suffix(w, forbidden)) continue;
      const std::size_t to = (idx * k + a) % count;
      edges.push_back({static_cast<State>(idx), a, static_cast<State>(to)});
    }
  }
  return ShiftPresentation(LabeledGraph(alphabet, count, std::move(edges)), sided, Provenance::forbidden_words);
}

std::vector<State> all_states(const LabeledGraph& g) {
  std::vector<State> s(g.state_count());
  std::iota(s.begin(), s.end(), State{0});
  return s;
}

std::vector<State> follow(const LabeledGraph& g, std::span<const State> from, std::span<const Symbol> w) {
  std::vector<State> cur(from.begin(), from.end());
  std::vector<char> mark(g.state_count(), 0);
  for (Symbol a : w) {
    std::vector<State> nxt;
    for (State q : cur) {
      for (std::size_t i : g.out_edges(q)) {
        const Edge& e = g.edges()[i];
        if (e.label == a && !mark[e.to]) {
          mark[e.to] = 1;
          nxt.push_back(e.to);
        }
      }
    }
    for (State q : nxt) mark[q] = 0;
    std::sort(nxt.begin(), nxt.end());
    cur = std::move(nxt);
    if (cur.empty()) break;
  }
  return cur;
}

std::vector<State> precede(const LabeledGraph& g, std::span<const State> to, std::span<const Symbol> w) {
  std::vector<State> cur(to.begin(), to.end());
  std::vector<char> mark(g.state_count(), 0);
  for (std::size_t k = w.size(); k-- > 0;) {
    std::vector<State> prv;
    for (State q : cur) {
      for (std::size_t i : g.in_edges(q)) {
        const Edge& e = g.edges()[i];
        if (e.label == w[k] && !mark[e.from]) {
          mark[e.from] = 1;
          prv.push_back(e.from);
        }
      }
    }
    for (State q : prv) mark[q] = 0;
    std::sort(prv.begin(), prv.end());
    cur = std::move(prv);
    if (cur.empty()) break;
  }
  return cur;
}

namespace {

/// Subset automaton started from the full state set; every subset state accepts.
LabeledGraph subset_graph(const LabeledGraph& g, std::size_t cap) {
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> sets;
  std::vector<Edge> edges;
  sets.push_back(all_states(g));
  ids.emplace(sets.front(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Symbol a = 0; a < g.alphabet().size(); ++a) {
      const Symbol w[1] = {a};
      std::vector<State> nxt = follow(g, sets[i], w);
      if (nxt.empty()) continue;
      auto [it, fresh] = ids.emplace(nxt, static_cast<State>(sets.size()));
      if (fresh) {
        if (sets.size() >= cap) throw Error("determinization exceeded the subset-state cap");
        sets.push_back(std::move(nxt));
      }
      edges.push_back({static_cast<State>(i), a, it->second});
    }
  }
  return LabeledGraph(g.alphabet(), sets.size(), std::move(edges));
}

/// Merges states of a right-resolving graph with equal follower languages.
LabeledGraph moore_minimize(const LabeledGraph& g) {
  const std::size_t n = g.state_count();
  const std::size_t k = g.alphabet().size();
  std::vector<std::size_t> cls(n, 0);
  std::size_t classes = n == 0 ? 0 : 1;
  while (true) {
    std::map<std::vector<std::int64_t>, std::size_t> sig_ids;
    std::vector<std::size_t> next_cls(n);
    for (State q = 0; q < n; ++q) {
      std::vector<std::int64_t> sig{static_cast<std::int64_t>(cls[q])};
      for (Symbol a = 0; a < k; ++a) {
        const auto r = g.next(q, a);
        sig.push_back(r == kNoState ? -1 : static_cast<std::int64_t>(cls[static_cast<std::size_t>(r)]));
      }
      next_cls[q] = sig_ids.emplace(std::move(sig), sig_ids.size()).first->second;
    }
    const std::size_t count = sig_ids.size();
    cls = std::move(next_cls);
    if (count == classes) break;
    classes = count;
  }
  std::set<Edge> edges;
  for (const Edge& e : g.edges()) edges.insert({static_cast<State>(cls[e.from]), e.label, static_cast<State>(cls[e.to])});
  return LabeledGraph(g.alphabet(), classes, std::vector<Edge>(edges.begin(), edges.end()));
}

bool edge_leaves(const LabeledGraph& g, const std::vector<State>& comp) {
  for (State q : comp) {
    for (std::size_t i : g.out_edges(q)) {
      if (!std::binary_search(comp.begin(), comp.end(), g.edges()[i].to)) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Word> language_difference(const ShiftPresentation& a, const ShiftPresentation& b, std::size_t cap) {
  if (!(a.alphabet() == b.alphabet())) throw Error("language comparison across different alphabets");
  using Pair = std::pair<std::vector<State>, std::vector<State>>;
  std::map<Pair, std::pair<std::int64_t, Symbol>> parent;  // predecessor index, symbol
  std::vector<Pair> order;
  order.push_back({all_states(a.graph()), all_states(b.graph())});
  parent.emplace(order.front(), std::make_pair(std::int64_t{-1}, Symbol{0}));
  auto word_to = [&](std::size_t i) {
    Word w;
    std::int64_t cur = static_cast<std::int64_t>(i);
    while (cur > 0) {
      const auto& [prev, sym] = parent.at(order[static_cast<std::size_t>(cur)]);
      w.push_back(sym);
      cur = prev;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  if (a.empty()) return std::nullopt;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      const Symbol w[1] = {s};
      auto na = follow(a.graph(), order[i].first, w);
      if (na.empty()) continue;
      auto nb = follow(b.graph(), order[i].second, w);
      if (nb.empty()) {
        Word out = word_to(i);
        out.push_back(s);
        return out;
      }
      Pair key{std::move(na), std::move(nb)};
      if (parent.contains(key)) continue;
      if (order.size() >= cap) throw Error("language comparison exceeded the state cap");
      parent.emplace(key, std::make_pair(static_cast<std::int64_t>(i), s));
      order.push_back(std::move(key));
    }
  }
  return std::nullopt;
}

bool same_language(const ShiftPresentation& a, const ShiftPresentation& b) {
  return !language_difference(a, b) && !language_difference(b, a);
}

ShiftPresentation determinize_and_minimize(const ShiftPresentation& p, std::size_t cap) {
  if (p.minimal()) return p;
  if (p.empty()) return ShiftPresentation::minimal_form(p.graph(), p.sidedness(), p.provenance());
  LabeledGraph d = moore_minimize(subset_graph(p.graph(), cap).trimmed());
  const auto comps = strongly_connected_components(d);
  std::vector<const std::vector<State>*> terminal;
  for (const auto& c : comps) {
    if (!edge_leaves(d, c)) terminal.push_back(&c);
  }
  if (terminal.size() == 1 && terminal.front()->size() < d.state_count()) {
    LabeledGraph sub = d.restricted(*terminal.front()).trimmed();
    if (!sub.empty()) {
      const ShiftPresentation whole(d, p.sidedness(), p.provenance());
      const ShiftPresentation part(sub, p.sidedness(), p.provenance());
      if (same_language(whole, part)) d = moore_minimize(sub);
    }
  }
  return ShiftPresentation::minimal_form(std::move(d), p.sidedness(), p.provenance());
}

bool word_in_language(const ShiftPresentation& p, std::span<const Symbol> w) {
  if (w.empty()) return true;
  if (p.empty()) return false;
  const auto& g = p.graph();
  if (g.right_resolving() && g.state_count() <= 64) {
    // Bitset simulation for the common small deterministic case.
    std::uint64_t cur = g.state_count() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.state_count()) - 1);
    for (Symbol a : w) {
      if (a >= g.alphabet().size()) return false;
      std::uint64_t nxt = 0;
      for (std::uint64_t bits = cur; bits;) {
        const int q = __builtin_ctzll(bits);
        bits &= bits - 1;
        const auto r = g.next(static_cast<State>(q), a);
        if (r != kNoState) nxt |= std::uint64_t{1} << r;
      }
      if (!nxt) return false;
      cur = nxt;
    }
    return true;
  }
  return !follow(g, all_states(g), w).empty();
}

bool contains_point(const ShiftPresentation& p, const PointPresentation& x) {
  if (p.sidedness() != x.sidedness()) throw Error("contains_point: sidedness mismatch");
  if (p.empty()) return false;
  const auto& g = p.graph();
  std::vector<State> right = all_states(g);
  while (true) {
    auto nxt = precede(g, right, x.right_tail());
    if (nxt == right) break;
    right = std::move(nxt);
    if (right.empty()) return false;
  }
  if (x.sidedness() == Sidedness::one) return !precede(g, right, x.core()).empty();
  std::vector<State> left = all_states(g);
  while (true) {
    auto nxt = follow(g, left, x.left_tail());
    if (nxt == left) break;
    left = std::move(nxt);
    if (left.empty()) return false;
  }
  const auto mid = follow(g, left, x.core());
  std::vector<State> both;
  std::set_intersection(mid.begin(), mid.end(), right.begin(), right.end(), std::back_inserter(both));
  return !both.empty();
}

namespace {

Index floor_div(Index a, Index b) {
  Index q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

PowerRecoding::PowerRecoding(const ShiftPresentation& p, std::size_t m) : m_(m), base_(p.alphabet()) {
  if (m == 0) throw Error("power recoding needs m >= 1");
  const auto& g = p.graph();
  struct Path {
    State from;
    Word word;
    State to;
  };
  std::vector<Path> paths;
  for (State q = 0; q < g.state_count(); ++q) {
    std::vector<Path> frontier{{q, {}, q}};
    for (std::size_t step = 0; step < m; ++step) {
      std::vector<Path> next;
      for (const Path& path : frontier) {
        for (std::size_t i : g.out_edges(path.to)) {
          Path ext = path;
          ext.word.push_back(g.edges()[i].label);
          ext.to = g.edges()[i].to;
          next.push_back(std::move(ext));
        }
      }
      frontier = std::move(next);
      if (frontier.size() > kDefaultSubsetCap) throw Error("power recoding too large");
    }
    paths.insert(paths.end(), frontier.begin(), frontier.end());
  }
  std::set<Word> block_set;
  for (const Path& path : paths) block_set.insert(path.word);
  blocks_.assign(block_set.begin(), block_set.end());
  std::vector<std::string> tokens;
  for (const Word& b : blocks_) {
    std::string t;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i > 0 && !base_.compact()) t += '.';
      t += base_.token(b[i]);
    }
    tokens.push_back(std::move(t));
  }
  if (blocks_.empty()) {
    shift_ = ShiftPresentation(LabeledGraph(Alphabet({"_"}), 0, {}), p.sidedness(), Provenance::derived);
    return;
  }
  Alphabet alphabet(std::move(tokens));
  std::vector<Edge> edges;
  for (const Path& path : paths) {
    const auto it = std::lower_bound(blocks_.begin(), blocks_.end(), path.word);
    edges.push_back({path.from, static_cast<Symbol>(it - blocks_.begin()), path.to});
  }
  shift_ = ShiftPresentation(LabeledGraph(alphabet, g.state_count(), std::move(edges)), p.sidedness(), Provenance::derived);
}

PointPresentation PowerRecoding::encode(const PointPresentation& x) const {
  const Index m = static_cast<Index>(m_);
  auto block_at = [&](Index i) {
    const Word b = x.window(i * m, i * m + m - 1).contents;
    const auto it = std::lower_bound(blocks_.begin(), blocks_.end(), b);
    if (it == blocks_.end() || *it != b) throw Error("point contains a block outside the recoded alphabet");
    return static_cast<Symbol>(it - blocks_.begin());
  };
  auto blocks = [&](Index first, Index last) {
    Word w;
    for (Index i = first; i <= last; ++i) w.push_back(block_at(i));
    return w;
  };
  const Index b = std::max<Index>(floor_div(x.core_last(), m), 0);
  const Index right_len = static_cast<Index>(x.right_tail().size());
  if (x.sidedness() == Sidedness::one) {
    return PointPresentation::one_sided(blocks(0, b), blocks(b + 1, b + right_len));
  }
  const Index a = std::min<Index>(floor_div(x.core_first(), m), 0);
  const Index left_len = static_cast<Index>(x.left_tail().size());
  return PointPresentation::two_sided(blocks(a - left_len, a - 1), blocks(a, b), blocks(b + 1, b + right_len), -a);
}

PointPresentation PowerRecoding::decode(const PointPresentation& y) const {
  auto expand = [&](const Word& w) {
    Word out;
    for (Symbol s : w) {
      const Word& b = blocks_.at(s);
      out.insert(out.end(), b.begin(), b.end());
    }
    return out;
  };
  if (y.sidedness() == Sidedness::one) return PointPresentation::one_sided(expand(y.core()), expand(y.right_tail()));
  return PointPresentation::two_sided(expand(y.left_tail()), expand(y.core()), expand(y.right_tail()),
                                      y.origin() * static_cast<Index>(m_));
}

PowerRecoding power_recode(const ShiftPresentation& p, std::size_t m) { return PowerRecoding(p, m); }

}  // namespace symdyn
