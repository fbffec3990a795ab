#include "symdyn/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace symdyn {

std::string_view to_string(Sidedness s) { return s == Sidedness::one ? "one" : "two"; }

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw Error("alphabet must not be empty");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const auto& t = tokens_[i];
    if (t.empty()) throw Error("alphabet tokens must be non-empty");
    for (char c : t) {
      if (std::isspace(static_cast<unsigned char>(c))) throw Error("alphabet token contains whitespace: '" + t + "'");
    }
    if (std::find(tokens_.begin(), tokens_.begin() + static_cast<std::ptrdiff_t>(i), t) !=
        tokens_.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw Error("duplicate alphabet token '" + t + "'");
    }
    if (t.size() != 1) compact_ = false;
  }
  if (tokens_.size() > 0xFFFF) throw Error("alphabet too large");
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i] == token) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

Symbol Alphabet::symbol(std::string_view token) const {
  auto s = find(token);
  if (!s) throw Error("symbol '" + std::string(token) + "' not in alphabet");
  return *s;
}

Word Alphabet::parse(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (compact_) {
      out.push_back(symbol(text.substr(i, 1)));
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    out.push_back(symbol(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::string Alphabet::format(std::span<const Symbol> word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact_ && i > 0) out += ' ';
    out += token(word[i]);
  }
  return out;
}

bool Alphabet::contains(std::span<const Symbol> word) const {
  return std::all_of(word.begin(), word.end(), [&](Symbol s) { return s < tokens_.size(); });
}

std::size_t primitive_root_length(std::span<const Symbol> w) {
  const std::size_t n = w.size();
  if (n == 0) throw Error("primitive root of the empty word");
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

std::size_t least_rotation(std::span<const Symbol> w) {
  const std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Symbol a = w[(k + i) % n];
      const Symbol b = w[(best + i) % n];
      if (a != b) {
        if (a < b) best = k;
        break;
      }
    }
  }
  return best;
}

Word rotate_left(std::span<const Symbol> w, std::size_t k) {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[(i + k) % w.size()];
  return out;
}

PeriodicWord::PeriodicWord(Word w) {
  if (w.empty()) throw Error("periodic word must be non-empty");
  w.resize(primitive_root_length(w));
  primitive_ = std::move(w);
  phase_ = least_rotation(primitive_);
}

bool operator<(const PeriodicWord& a, const PeriodicWord& b) {
  if (a.period() != b.period()) return a.period() < b.period();
  const Word ca = a.canonical();
  const Word cb = b.canonical();
  if (ca != cb) return ca < cb;
  return a.primitive() < b.primitive();
}

namespace {

Word primitive_of(Word w) {
  if (w.empty()) throw Error("point tails must be non-empty");
  w.resize(primitive_root_length(w));
  return w;
}

}  // namespace

PointPresentation PointPresentation::two_sided(Word left_tail, Word core, Word right_tail, Index origin) {
  PointPresentation p;
  p.sided_ = Sidedness::two;
  p.left_ = primitive_of(std::move(left_tail));
  p.core_ = std::move(core);
  p.right_ = primitive_of(std::move(right_tail));
  p.origin_ = origin;
  p.normalize();
  return p;
}

PointPresentation PointPresentation::one_sided(Word core, Word right_tail) {
  PointPresentation p;
  p.sided_ = Sidedness::one;
  p.core_ = std::move(core);
  p.right_ = primitive_of(std::move(right_tail));
  p.origin_ = 0;
  p.normalize();
  return p;
}

PointPresentation PointPresentation::periodic(const PeriodicWord& w, Sidedness sided) {
  if (sided == Sidedness::one) return one_sided({}, w.primitive());
  return two_sided(w.primitive(), {}, w.primitive(), 0);
}

Symbol PointPresentation::at(Index i) const {
  if (sided_ == Sidedness::one && i < 0) throw Error("negative index on a one-sided point");
  const Index pos = i + origin_;
  const Index n = static_cast<Index>(core_.size());
  if (pos >= 0 && pos < n) return core_[static_cast<std::size_t>(pos)];
  if (pos < 0) {
    const Index len = static_cast<Index>(left_.size());
    return left_[static_cast<std::size_t>(((pos % len) + len) % len)];
  }
  const Index len = static_cast<Index>(right_.size());
  return right_[static_cast<std::size_t>((pos - n) % len)];
}

Window PointPresentation::window(Index first, Index last) const {
  Window w;
  w.first = first;
  w.last = last;
  if (last < first) {
    w.last = first - 1;
    return w;
  }
  if (sided_ == Sidedness::one && first < 0) throw Error("negative index on a one-sided point");
  w.contents.reserve(static_cast<std::size_t>(last - first + 1));
  for (Index i = first; i <= last; ++i) w.contents.push_back(at(i));
  return w;
}

std::optional<PeriodicWord> PointPresentation::left_periodic() const {
  if (sided_ == Sidedness::one) return std::nullopt;
  return PeriodicWord(left_);
}

void PointPresentation::normalize() {
  if (sided_ == Sidedness::one) {
    origin_ = 0;
    while (!core_.empty() && core_.back() == right_.back()) {
      std::rotate(right_.begin(), right_.end() - 1, right_.end());
      core_.pop_back();
    }
    return;
  }
  // Absorb tail symbols until index 0 lies inside the core.
  if (origin_ < 0) {
    const Index extra = -origin_;
    Word prefix;
    Word new_left;
    // Positions relative to the old core: the prepended block covers [-extra, -1].
    for (Index k = -extra; k < 0; ++k) {
      const Index len = static_cast<Index>(left_.size());
      prefix.push_back(left_[static_cast<std::size_t>(((k % len) + len) % len)]);
    }
    for (Index k = -extra - static_cast<Index>(left_.size()); k < -extra; ++k) {
      const Index len = static_cast<Index>(left_.size());
      new_left.push_back(left_[static_cast<std::size_t>(((k % len) + len) % len)]);
    }
    prefix.insert(prefix.end(), core_.begin(), core_.end());
    core_ = std::move(prefix);
    left_ = std::move(new_left);
    origin_ = 0;
  }
  if (origin_ >= static_cast<Index>(core_.size())) {
    const std::size_t need = static_cast<std::size_t>(origin_) + 1 - core_.size();
    const std::size_t len = right_.size();
    Word new_right(len);
    for (std::size_t k = 0; k < need; ++k) core_.push_back(right_[k % len]);
    for (std::size_t k = 0; k < len; ++k) new_right[k] = right_[(need + k) % len];
    right_ = std::move(new_right);
  }
  while (origin_ > 0 && core_.front() == left_.front()) {
    std::rotate(left_.begin(), left_.begin() + 1, left_.end());
    core_.erase(core_.begin());
    --origin_;
  }
  while (static_cast<Index>(core_.size()) - 1 > origin_ && core_.back() == right_.back()) {
    std::rotate(right_.begin(), right_.end() - 1, right_.end());
    core_.pop_back();
  }
}

Window window_of(const PointPresentation& p, Index first, Index last) { return p.window(first, last); }

PointPresentation shift_point(const PointPresentation& p, Index k) {
  if (p.sidedness() == Sidedness::one) {
    if (k < 0) throw Error("negative shift of a one-sided point");
    const auto& core = p.core();
    const auto& right = p.right_tail();
    if (static_cast<std::size_t>(k) <= core.size()) {
      return PointPresentation::one_sided(Word(core.begin() + k, core.end()), right);
    }
    const std::size_t r = (static_cast<std::size_t>(k) - core.size()) % right.size();
    return PointPresentation::one_sided({}, rotate_left(right, r));
  }
  return PointPresentation::two_sided(p.left_tail(), p.core(), p.right_tail(), p.origin() + k);
}

std::optional<std::size_t> is_periodic(const PointPresentation& p) {
  const Word& right = p.right_tail();
  const Index per = static_cast<Index>(right.size());
  if (p.sidedness() == Sidedness::one) {
    for (Index i = 0; i < static_cast<Index>(p.core().size()); ++i) {
      if (p.at(i) != p.at(i + per)) return std::nullopt;
    }
    return right.size();
  }
  if (p.left_tail().size() != right.size()) return std::nullopt;
  if (!PeriodicWord(p.left_tail()).same_orbit(PeriodicWord(right))) return std::nullopt;
  for (Index i = p.core_first() - per; i <= p.core_last() + per; ++i) {
    if (p.at(i) != p.at(i + per)) return std::nullopt;
  }
  return right.size();
}

PointPresentation splice(const PointPresentation& x, const PointPresentation& s, const PointPresentation& y,
                         Index ell) {
  if (x.sidedness() != Sidedness::two || s.sidedness() != Sidedness::two || y.sidedness() != Sidedness::two) {
    throw Error("splice requires two-sided points");
  }
  if (ell < 0) throw Error("splice radius must be non-negative");
  const Word centre = s.window(-ell, ell).contents;
  if (x.window(-ell, ell).contents != centre || y.window(-ell, ell).contents != centre) {
    throw Error("splice: points disagree on the central block");
  }
  const Index first = std::min(x.core_first(), -ell);
  const Index last = std::max(y.core_last(), ell);
  const Index left_len = static_cast<Index>(x.left_tail().size());
  const Index right_len = static_cast<Index>(y.right_tail().size());
  Word left = x.window(first - left_len, first - 1).contents;
  Word core = x.window(first, ell).contents;
  const Word tail = y.window(ell + 1, last).contents;
  core.insert(core.end(), tail.begin(), tail.end());
  Word right = y.window(last + 1, last + right_len).contents;
  return PointPresentation::two_sided(std::move(left), std::move(core), std::move(right), -first);
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct TailMatch {
  std::size_t begin;  // position of '['
  std::size_t end;    // one past the exponent
  std::string body;
};

std::optional<TailMatch> find_tail(std::string_view text, std::string_view exponent, std::size_t from) {
  const std::size_t open = text.find('[', from);
  if (open == std::string_view::npos) return std::nullopt;
  const std::size_t close = text.find(']', open);
  if (close == std::string_view::npos) throw ParseError("unterminated '['", 1, open + 1);
  std::size_t k = close + 1;
  while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  if (text.substr(k, exponent.size()) != exponent) return std::nullopt;
  return TailMatch{open, k + exponent.size(), std::string(text.substr(open + 1, close - open - 1))};
}

}  // namespace

PointPresentation parse_point(std::string_view text, const Alphabet& alphabet) {
  std::string_view rest = text;
  std::optional<Index> origin;
  if (const auto at = rest.rfind('@'); at != std::string_view::npos) {
    const std::string num = trim(rest.substr(at + 1));
    try {
      std::size_t used = 0;
      origin = std::stoll(num, &used);
      if (used != num.size()) throw ParseError("bad origin offset '" + num + "'", 1, at + 2);
    } catch (const std::logic_error&) {
      throw ParseError("bad origin offset '" + num + "'", 1, at + 2);
    }
    rest = rest.substr(0, at);
  }
  std::optional<TailMatch> left;
  if (auto m = find_tail(rest, "^-inf", 0)) {
    if (!trim(rest.substr(0, m->begin)).empty()) throw ParseError("text before left tail", 1, 1);
    left = m;
  }
  const std::size_t core_from = left ? left->end : 0;
  // The right tail is the last bracket group, written `[v]^inf`.
  const std::size_t open = rest.rfind('[');
  if (open == std::string_view::npos || open < core_from) throw ParseError("missing right tail '[v]^inf'", 1, rest.size() + 1);
  auto right = find_tail(rest, "^inf", open);
  if (!right) throw ParseError("missing right tail '[v]^inf'", 1, open + 1);
  if (!trim(rest.substr(right->end)).empty()) throw ParseError("text after right tail", 1, right->end + 1);
  const std::string core_text(rest.substr(core_from, open - core_from));
  Word core;
  Word right_tail;
  Word left_tail;
  try {
    core = alphabet.parse(core_text);
    right_tail = alphabet.parse(right->body);
    if (left) left_tail = alphabet.parse(left->body);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, core_from + 1);
  }
  if (right_tail.empty()) throw ParseError("empty right tail", 1, open + 1);
  if (left) {
    if (left_tail.empty()) throw ParseError("empty left tail", 1, left->begin + 1);
    return PointPresentation::two_sided(std::move(left_tail), std::move(core), std::move(right_tail), origin.value_or(0));
  }
  if (origin && *origin != 0) throw ParseError("one-sided points have origin 0", 1, 1);
  return PointPresentation::one_sided(std::move(core), std::move(right_tail));
}

std::string format_point(const PointPresentation& p, const Alphabet& alphabet) {
  std::ostringstream out;
  if (p.sidedness() == Sidedness::two) out << '[' << alphabet.format(p.left_tail()) << "]^-inf ";
  if (!p.core().empty()) out << alphabet.format(p.core()) << ' ';
  out << '[' << alphabet.format(p.right_tail()) << "]^inf";
  if (p.sidedness() == Sidedness::two) out << " @" << p.origin();
  return out.str();
}

}  // namespace symdyn
