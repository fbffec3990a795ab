// Regular expressions over an alphabet, compiled to a position (Glushkov) automaton
// whose accepting positions loop back to the initial ones.

#include <algorithm>
#include <memory>
#include <set>

#include "symdyn/presentations.hpp"

namespace symdyn {
namespace {

enum class TokenKind { symbol, lparen, rparen, star, alt, end };

struct Token {
  TokenKind kind;
  Symbol symbol = 0;
  std::size_t column = 0;
};

std::vector<Token> lex(const Alphabet& alphabet, std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t col = i + 1;
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (c == '(') out.push_back({TokenKind::lparen, 0, col});
    else if (c == ')') out.push_back({TokenKind::rparen, 0, col});
    else if (c == '*') out.push_back({TokenKind::star, 0, col});
    else if (c == '+' || c == '|') out.push_back({TokenKind::alt, 0, col});
    if (c == '(' || c == ')' || c == '*' || c == '+' || c == '|') {
      ++i;
      continue;
    }
    std::size_t best = 0;
    Symbol sym = 0;
    for (Symbol s = 0; s < alphabet.size(); ++s) {
      const auto& t = alphabet.token(s);
      if (t.size() > best && text.substr(i, t.size()) == t) {
        best = t.size();
        sym = s;
      }
    }
    if (best == 0) throw ParseError("symbol not in alphabet: '" + std::string(1, c) + "'", 1, col);
    out.push_back({TokenKind::symbol, sym, col});
    i += best;
  }
  out.push_back({TokenKind::end, 0, text.size() + 1});
  return out;
}

struct Node {
  enum Kind { leaf, cat, alt, star } kind;
  std::size_t position = 0;  // leaf only
  std::unique_ptr<Node> a{};
  std::unique_ptr<Node> b{};
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::unique_ptr<Node> parse() {
    auto n = parse_union();
    if (peek().kind != TokenKind::end) throw ParseError("unexpected token", 1, peek().column);
    return n;
  }

  const std::vector<Symbol>& position_symbols() const { return symbols_; }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  std::unique_ptr<Node> parse_union() {
    auto left = parse_concat();
    while (peek().kind == TokenKind::alt) {
      ++pos_;
      auto n = std::make_unique<Node>(Node{Node::alt});
      n->a = std::move(left);
      n->b = parse_concat();
      left = std::move(n);
    }
    return left;
  }

  std::unique_ptr<Node> parse_concat() {
    auto left = parse_star();
    while (peek().kind == TokenKind::symbol || peek().kind == TokenKind::lparen) {
      auto n = std::make_unique<Node>(Node{Node::cat});
      n->a = std::move(left);
      n->b = parse_star();
      left = std::move(n);
    }
    return left;
  }

  std::unique_ptr<Node> parse_star() {
    auto n = parse_atom();
    while (peek().kind == TokenKind::star) {
      ++pos_;
      auto s = std::make_unique<Node>(Node{Node::star});
      s->a = std::move(n);
      n = std::move(s);
    }
    return n;
  }

  std::unique_ptr<Node> parse_atom() {
    const Token t = peek();
    if (t.kind == TokenKind::symbol) {
      ++pos_;
      auto n = std::make_unique<Node>(Node{Node::leaf});
      n->position = symbols_.size();
      symbols_.push_back(t.symbol);
      return n;
    }
    if (t.kind == TokenKind::lparen) {
      ++pos_;
      auto n = parse_union();
      if (peek().kind != TokenKind::rparen) throw ParseError("expected ')'", 1, peek().column);
      ++pos_;
      return n;
    }
    throw ParseError(t.kind == TokenKind::end ? "unexpected end of expression" : "expected a symbol or '('", 1,
                     t.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Symbol> symbols_;
};

struct Glushkov {
  bool nullable = false;
  std::set<std::size_t> first;
  std::set<std::size_t> last;
};

Glushkov analyse(const Node& n, std::vector<std::set<std::size_t>>& follow) {
  switch (n.kind) {
    case Node::leaf:
      return {false, {n.position}, {n.position}};
    case Node::alt: {
      Glushkov l = analyse(*n.a, follow);
      Glushkov r = analyse(*n.b, follow);
      l.nullable = l.nullable || r.nullable;
      l.first.insert(r.first.begin(), r.first.end());
      l.last.insert(r.last.begin(), r.last.end());
      return l;
    }
    case Node::cat: {
      Glushkov l = analyse(*n.a, follow);
      Glushkov r = analyse(*n.b, follow);
      for (std::size_t p : l.last) follow[p].insert(r.first.begin(), r.first.end());
      Glushkov out;
      out.nullable = l.nullable && r.nullable;
      out.first = l.first;
      if (l.nullable) out.first.insert(r.first.begin(), r.first.end());
      out.last = r.last;
      if (r.nullable) out.last.insert(l.last.begin(), l.last.end());
      return out;
    }
    case Node::star: {
      Glushkov s = analyse(*n.a, follow);
      for (std::size_t p : s.last) follow[p].insert(s.first.begin(), s.first.end());
      s.nullable = true;
      return s;
    }
  }
  return {};
}

}  // namespace

ShiftPresentation shift_from_regex(const Alphabet& alphabet, std::string_view expression, Sidedness sided) {
  Parser parser(lex(alphabet, expression));
  const auto root = parser.parse();
  const auto& symbols = parser.position_symbols();
  std::vector<std::set<std::size_t>> follow(symbols.size());
  const Glushkov g = analyse(*root, follow);
  // Cyclic closure: after a complete match the next match may start.
  for (std::size_t p : g.last) follow[p].insert(g.first.begin(), g.first.end());
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < symbols.size(); ++p) {
    for (std::size_t q : follow[p]) edges.push_back({static_cast<State>(p), symbols[q], static_cast<State>(q)});
  }
  return ShiftPresentation(LabeledGraph(alphabet, symbols.size(), std::move(edges)), sided, Provenance::regex);
}

}  // namespace symdyn
