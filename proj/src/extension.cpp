#include "symdyn/extension.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "symdyn/analysis.hpp"

namespace symdyn {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::extended:
      return "extended";
    case Verdict::obstruction:
      return "obstruction";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::size_t presentation_diameter(const ShiftPresentation& p) {
  const auto m = p.minimal() ? p : determinize_and_minimize(p);
  const auto& g = m.graph();
  std::size_t diameter = 0;
  std::vector<std::int64_t> dist(g.state_count());
  for (State s = 0; s < g.state_count(); ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<State> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const State q = queue.front();
      queue.pop_front();
      diameter = std::max(diameter, static_cast<std::size_t>(dist[q]));
      for (std::size_t i : g.out_edges(q)) {
        const State r = g.edges()[i].to;
        if (dist[r] < 0) {
          dist[r] = dist[q] + 1;
          queue.push_back(r);
        }
      }
    }
  }
  return diameter;
}

std::size_t default_depth(const ShiftPresentation& p, std::size_t n) { return 4 * n + presentation_diameter(p); }

namespace {

std::vector<PeriodicWord> tail_orbits(const PointPresentation& p) {
  std::vector<PeriodicWord> out{PeriodicWord(p.right_tail())};
  if (p.sidedness() == Sidedness::two) out.emplace_back(p.left_tail());
  return out;
}

class Collector {
 public:
  Collector(const EquivariantOracle& o, const PointPresentation& target, std::size_t n, std::size_t depth)
      : o_(o), target_(target), avoid_(tail_orbits(target)), approx_{target, n, depth, {}, 0, 0} {}

  /// `shift` > 0 marks a left-marker context: its realization is shifted back.
  void offer(const Word& ctx, std::size_t zero, std::size_t shift = 0) {
    const ShiftPresentation& x = o_.domain();
    if (!word_in_language(x, ctx)) return;
    ++approx_.contexts;
    const std::size_t n = approx_.scale;
    const bool two = target_.sidedness() == Sidedness::two;
    const std::size_t first = two ? zero - n : zero;
    const auto img = o_.query_range(ctx, first, zero + n);
    if (!img) {
      ++approx_.undetermined;
      return;
    }
    if (found_.contains(*img)) return;
    auto& tries = failed_[*img];
    if (tries >= 4) return;
    auto p = realize_context(x, ctx, two ? zero : 0, avoid_);
    if (p && shift > 0) p = shift_point(*p, static_cast<Index>(shift));
    if (!p || *p == target_ || is_periodic(*p) || !contains_point(x, *p)) {
      ++tries;
      return;
    }
    found_.emplace(*img, RealizedWindow{*img, ctx, zero, std::move(*p)});
  }

  ImageSetApproximation finish() {
    for (auto& [w, r] : found_) approx_.windows.push_back(std::move(r));
    return std::move(approx_);
  }

 private:
  const EquivariantOracle& o_;
  const PointPresentation& target_;
  std::vector<PeriodicWord> avoid_;
  ImageSetApproximation approx_;
  std::map<Word, RealizedWindow> found_;
  std::map<Word, int> failed_;
};

}  // namespace

ImageSetApproximation approximate_image_set(const EquivariantOracle& o, const PointPresentation& target,
                                            std::size_t n, std::size_t depth) {
  if (depth < n) throw Error("context depth must be at least the scale");
  if (target.sidedness() != o.sidedness()) throw Error("target sidedness differs from the oracle domain");
  const ShiftPresentation& x = o.domain();
  if (!contains_point(x, target)) throw Error("target point not in the domain shift");
  const auto k = static_cast<Symbol>(x.alphabet().size());
  const Index big_n = static_cast<Index>(depth);
  Collector c(o, target, n, depth);
  Word ctx;
  if (target.sidedness() == Sidedness::two) {
    for (Index a = 0; a <= big_n; ++a) {
      for (Index b = 0; b <= big_n; ++b) {
        const Word base = target.window(-big_n - a, big_n + b).contents;
        const Symbol skip_l = target.at(-big_n - a - 1);
        const Symbol skip_r = target.at(big_n + b + 1);
        for (Symbol l = 0; l <= k; ++l) {
          if (l == skip_l) continue;
          for (Symbol r = 0; r <= k; ++r) {
            if (r == skip_r) continue;
            ctx.clear();
            if (l < k) ctx.push_back(l);
            ctx.insert(ctx.end(), base.begin(), base.end());
            if (r < k) ctx.push_back(r);
            c.offer(ctx, static_cast<std::size_t>(big_n + a) + (l < k ? 1 : 0));
          }
        }
      }
    }
    return c.finish();
  }
  for (Index b = 0; b <= big_n; ++b) {
    const Word base = target.window(0, big_n + b).contents;
    const Symbol skip_r = target.at(big_n + b + 1);
    for (Symbol r = 0; r <= k; ++r) {
      if (r == skip_r) continue;
      ctx = base;
      if (r < k) ctx.push_back(r);
      c.offer(ctx, 0);
      for (Symbol m = 0; m < k; ++m) {
        Word marked{m};
        marked.insert(marked.end(), ctx.begin(), ctx.end());
        c.offer(marked, 1, 1);
      }
    }
  }
  return c.finish();
}

ImageSetApproximation approximate_image_set(const EquivariantOracle& o, const PeriodicWord& s, std::size_t n,
                                            std::size_t depth) {
  return approximate_image_set(o, PointPresentation::periodic(s, o.sidedness()), n, depth);
}

namespace {

std::size_t least_word_period(const Word& w) {
  for (std::size_t q = 1; q < w.size(); ++q) {
    bool ok = true;
    for (std::size_t i = 0; i + q < w.size() && ok; ++i) ok = w[i] == w[i + q];
    if (ok) return q;
  }
  return w.size();
}

std::optional<std::size_t> common_period(const std::vector<RealizedWindow>& ws) {
  std::optional<std::size_t> q;
  for (const auto& r : ws) {
    const std::size_t p = least_word_period(r.window);
    if (2 * p > r.window.size()) return std::nullopt;
    if (q && *q != p) return std::nullopt;
    q = p;
  }
  return q;
}

/// True when the image window at scale n sits at the centre of the one at the larger scale.
bool projects(const Word& small, const Word& large, bool two) {
  if (small.size() > large.size()) return false;
  const std::size_t off = two ? (large.size() - small.size()) / 2 : 0;
  return std::equal(small.begin(), small.end(), large.begin() + static_cast<std::ptrdiff_t>(off));
}

ExtensionResult run_extension(const EquivariantOracle& o, const ShiftPresentation& x, const ShiftPresentation* y,
                              const ExtensionBudgets& budgets) {
  const bool two = o.sidedness() == Sidedness::two;
  ExtensionResult result;
  result.exact = o.code().has_value();
  std::vector<std::pair<PointPresentation, std::optional<PeriodicWord>>> targets;
  for (const auto& s : enumerate_periodic_orbits(x, budgets.period_max))
    targets.emplace_back(PointPresentation::periodic(s, o.sidedness()), s);
  for (const auto& t : budgets.extra_targets) targets.emplace_back(t, std::nullopt);
  std::vector<std::size_t> schedule;
  for (std::size_t n = 1; n <= std::max<std::size_t>(1, budgets.scale_max); n *= 2) schedule.push_back(n);
  bool all_extended = true;
  for (const auto& [target, orbit] : targets) {
    ++result.targets_checked;
    std::vector<ScaleRecord> growth;
    std::optional<ImageSetApproximation> widest;
    std::optional<Word> previous;
    std::size_t stable = 0;
    bool settled = false;
    for (std::size_t n : schedule) {
      const std::size_t depth = std::max(n, budgets.depth.value_or(default_depth(o.domain(), n)));
      auto approx = approximate_image_set(o, target, n, depth);
      growth.push_back({n, depth, approx.windows.size()});
      if (approx.windows.size() >= 2) {
        widest = std::move(approx);
        stable = 0;
        previous.reset();
        continue;
      }
      widest.reset();
      if (approx.windows.empty()) {
        stable = 0;
        previous.reset();
        continue;
      }
      const Word& w = approx.windows.front().window;
      stable = previous && projects(*previous, w, two) ? stable + 1 : 1;
      previous = w;
      if (stable < budgets.stable_scales) continue;
      if (!orbit) {
        settled = true;
        result.verification_scale = std::max(result.verification_scale, n);
        break;
      }
      const std::size_t p = orbit->period();
      if (w.size() < p) continue;
      bool periodic = true;
      for (std::size_t i = 0; i + p < w.size() && periodic; ++i) periodic = w[i] == w[i + p];
      if (!periodic) continue;
      Word root(p);
      for (std::size_t j = 0; j < p; ++j) {
        std::size_t idx = (two ? n : 0) + j;
        while (idx >= w.size()) idx -= p;
        root[j] = w[idx];
      }
      auto image = PointPresentation::periodic(PeriodicWord(root), o.sidedness());
      if (y && !contains_point(*y, image)) break;
      result.images.push_back({*orbit, std::move(image)});
      result.verification_scale = std::max(result.verification_scale, n);
      settled = true;
      break;
    }
    // Multiplicity must persist through the last two tested scales.
    const std::size_t g = growth.size();
    const bool obstructed = !settled && widest && (g < 2 || growth[g - 2].windows >= 2);
    if (obstructed) {
      Obstruction ob{target, orbit, widest->scale, std::move(widest->windows), growth, true, std::nullopt,
                     std::nullopt};
      for (const auto& rec : growth) ob.infinite = ob.infinite && rec.windows >= rec.scale;
      ob.infinite = ob.infinite && growth.size() >= 2;
      if (orbit) ob.period_in = orbit->period();
      ob.period_out = common_period(ob.windows);
      result.verdict = Verdict::obstruction;
      result.obstruction = std::move(ob);
      result.images.clear();
      return result;
    }
    if (!settled) {
      all_extended = false;
      if (result.reason.empty()) {
        result.reason = "no stable singleton image window up to scale " + std::to_string(schedule.back()) +
                        " at target " + format_point(target, x.alphabet());
      }
    }
  }
  result.verdict = all_extended ? Verdict::extended : Verdict::inconclusive;
  if (!all_extended) result.images.clear();
  return result;
}

}  // namespace

ExtensionResult extend(const EquivariantOracle& o, const ShiftPresentation& x, const ShiftPresentation& y,
                       const ExtensionBudgets& budgets) {
  if (x.sidedness() != Sidedness::two || o.sidedness() != Sidedness::two)
    throw Error("extend expects two-sided shifts; use extend_one_sided");
  return run_extension(o, x, &y, budgets);
}

ExtensionResult extend_one_sided(const EquivariantOracle& o, const ShiftPresentation& x,
                                 const ExtensionBudgets& budgets) {
  if (x.sidedness() != Sidedness::one || o.sidedness() != Sidedness::one)
    throw Error("extend_one_sided expects one-sided shifts");
  return run_extension(o, x, nullptr, budgets);
}

bool is_inverse_on(const SlidingBlockCode& f, const SlidingBlockCode& g, const ShiftPresentation& x) {
  if (!(f.codomain() == g.domain()) || !(g.codomain() == f.domain())) return false;
  const auto both = compose(f, g);
  const std::size_t len = both.window_length();
  Word w;
  bool ok = true;
  std::function<void()> grow = [&] {
    if (!ok || !word_in_language(x, w)) return;
    if (w.size() == len) {
      const auto s = both.lookup(w);
      ok = s && *s == w[both.memory()];
      return;
    }
    for (Symbol a = 0; a < x.alphabet().size(); ++a) {
      w.push_back(a);
      grow();
      w.pop_back();
    }
  };
  grow();
  return ok;
}

RoundtripReport aut_roundtrip(const SlidingBlockCode& f, const SlidingBlockCode& inverse, const ShiftPresentation& x,
                              const ExtensionBudgets& budgets) {
  RoundtripReport r;
  r.inverse_verified = is_inverse_on(f, inverse, x) && is_inverse_on(inverse, f, x);
  r.maps_into = code_maps_into(f, x, x).contained;
  if (!r.inverse_verified || !r.maps_into) return r;
  const auto o = oracle_from_code(f, x, x);
  const auto ext = x.sidedness() == Sidedness::two ? extend(o, x, x, budgets) : extend_one_sided(o, x, budgets);
  r.verdict = ext.verdict;
  for (const auto& [orbit, image] : ext.images) {
    ++r.orbits_compared;
    if (!(apply_code(f, PointPresentation::periodic(orbit, x.sidedness())) == image)) {
      ++r.disagreements;
      if (!r.first_disagreement) r.first_disagreement = orbit;
    }
  }
  return r;
}

PointPresentation splice_aperiodic_context(const ShiftPresentation& x, const PeriodicWord& s, const Word& left,
                                           const Word& right, std::size_t ell) {
  if (x.sidedness() != Sidedness::two) throw Error("splicing needs a two-sided shift");
  const auto sp = PointPresentation::periodic(s);
  for (std::size_t pad = ell; pad <= ell + 1; ++pad) {
    const Index l = static_cast<Index>(pad);
    const Word block = sp.window(-l, l).contents;
    if (!is_synchronizing_word(x, block))
      throw Error("periodic point is not synchronizing at l = " + std::to_string(pad));
    Word core = left;
    core.insert(core.end(), block.begin(), block.end());
    core.insert(core.end(), right.begin(), right.end());
    const Index origin = static_cast<Index>(left.size()) + l;
    const std::size_t p = s.period();
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        auto z = PointPresentation::two_sided(rotate_left(s.primitive(), i), core, rotate_left(s.primitive(), j),
                                              origin);
        if (!is_periodic(z) && contains_point(x, z)) return z;
      }
    }
    Word lw = left;
    lw.insert(lw.end(), block.begin(), block.end());
    Word rw = block;
    rw.insert(rw.end(), right.begin(), right.end());
    const auto xl = realize_context(x, lw, left.size() + pad);
    const auto xr = realize_context(x, rw, pad);
    if (xl && xr) {
      auto z = splice(*xl, sp, *xr, l);
      if (!is_periodic(z) && contains_point(x, z)) return z;
    }
  }
  throw Error("no aperiodic splice found");
}

}  // namespace symdyn
