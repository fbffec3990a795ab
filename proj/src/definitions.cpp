#include "symdyn/definitions.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace symdyn {
namespace {

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Value {
  std::string text;
  Pos pos;
};

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  Pos pos() const { return pos_; }
  bool done() {
    skip();
    return i_ >= text_.size();
  }

  [[noreturn]] void fail(const std::string& what, Pos p) const { throw ParseError(what, p.line, p.column); }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

  char peek() {
    skip();
    return i_ < text_.size() ? text_[i_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void expect_arrow() {
    skip();
    if (text_.substr(i_, 2) != "->") fail("expected '->'");
    advance();
    advance();
  }

  std::string word() {
    skip();
    const std::size_t start = i_;
    while (i_ < text_.size() && is_word_char(text_[i_])) advance();
    if (start == i_) fail("expected a name");
    return std::string(text_.substr(start, i_ - start));
  }

  std::string quoted() {
    if (peek() != '"') fail("expected a quoted string");
    advance();
    const std::size_t start = i_;
    while (i_ < text_.size() && text_[i_] != '"' && text_[i_] != '\n') advance();
    if (i_ >= text_.size() || text_[i_] != '"') fail("unterminated string");
    std::string s(text_.substr(start, i_ - start));
    advance();
    return s;
  }

  /// Raw text up to the next ';' outside quotes (the ';' is consumed).
  Value until_semicolon() {
    skip();
    Value v{{}, pos_};
    bool in_quotes = false;
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == '"') in_quotes = !in_quotes;
      if (!in_quotes && c == ';') {
        advance();
        return v;
      }
      if (!in_quotes && (c == '}' || c == '#')) break;
      if (c == '\n' && in_quotes) fail("unterminated string");
      v.text += c;
      advance();
    }
    fail("expected ';'");
  }

 private:
  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == ':';
  }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip() {
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  Pos pos_;
};

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

/// Quoted strings in a value, each with its column.
std::vector<Value> quoted_items(const Value& v, const Scanner& sc) {
  std::vector<Value> out;
  std::size_t i = 0;
  while (i < v.text.size()) {
    const char c = v.text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (c != '"') sc.fail("expected a quoted string", {v.pos.line, v.pos.column + i});
    const std::size_t end = v.text.find('"', i + 1);
    if (end == std::string::npos) sc.fail("unterminated string", {v.pos.line, v.pos.column + i});
    out.push_back({v.text.substr(i + 1, end - i - 1), {v.pos.line, v.pos.column + i + 1}});
    i = end + 1;
  }
  return out;
}

Word parse_word_at(const Alphabet& a, const Value& v, const Scanner& sc) {
  try {
    return a.parse(v.text);
  } catch (const Error& e) {
    sc.fail(e.what(), v.pos);
  }
}

ShiftDefinition parse_shift(Scanner& sc) {
  const Pos head = sc.pos();
  ShiftDefinition def{sc.word(), {}};
  sc.expect('{');
  std::map<std::string, Value> fields;
  while (sc.peek() != '}') {
    if (sc.peek() == '\0') sc.fail("unexpected end of file in shift block");
    const Pos at = sc.pos();
    const std::string key = sc.word();
    if (key != "alphabet" && key != "forbid" && key != "regex" && key != "graph" && key != "sided")
      sc.fail("unknown shift field '" + key + "'", at);
    if (fields.contains(key)) sc.fail("duplicate field '" + key + "'", at);
    sc.expect('=');
    fields[key] = sc.until_semicolon();
  }
  sc.expect('}');
  if (!fields.contains("alphabet")) sc.fail("shift '" + def.name + "' has no alphabet", head);
  auto tokens = split_ws(fields["alphabet"].text);
  if (tokens.empty()) sc.fail("empty alphabet", fields["alphabet"].pos);
  const Alphabet alphabet(std::move(tokens));
  Sidedness sided = Sidedness::two;
  if (fields.contains("sided")) {
    const auto words = split_ws(fields["sided"].text);
    if (words.size() != 1 || (words[0] != "one" && words[0] != "two"))
      sc.fail("sided must be 'one' or 'two'", fields["sided"].pos);
    sided = words[0] == "one" ? Sidedness::one : Sidedness::two;
  }
  const int kinds = static_cast<int>(fields.contains("forbid")) + static_cast<int>(fields.contains("regex")) +
                    static_cast<int>(fields.contains("graph"));
  if (kinds != 1) sc.fail("shift '" + def.name + "' needs exactly one of forbid, regex, graph", head);
  if (fields.contains("forbid")) {
    std::vector<Word> forbidden;
    for (const Value& item : quoted_items(fields["forbid"], sc)) {
      Word w = parse_word_at(alphabet, item, sc);
      if (w.empty()) sc.fail("empty forbidden word", item.pos);
      forbidden.push_back(std::move(w));
    }
    def.shift = sft_from_forbidden(alphabet, forbidden, sided);
  } else if (fields.contains("regex")) {
    const auto items = quoted_items(fields["regex"], sc);
    if (items.size() != 1) sc.fail("regex takes one quoted expression", fields["regex"].pos);
    try {
      def.shift = shift_from_regex(alphabet, items[0].text, sided);
    } catch (const ParseError& e) {
      sc.fail("in regex: " + e.message(), {items[0].pos.line, items[0].pos.column + e.column() - 1});
    }
  } else {
    const Value& v = fields["graph"];
    std::map<std::string, State> states;
    std::vector<Edge> edges;
    std::size_t start = 0;
    while (start <= v.text.size()) {
      std::size_t end = v.text.find(',', start);
      if (end == std::string::npos) end = v.text.size();
      const std::string entry = v.text.substr(start, end - start);
      const Pos at{v.pos.line, v.pos.column + start};
      const auto words = split_ws(entry);
      if (!words.empty()) {
        // q -a-> r
        if (words.size() != 3 || words[1].size() < 4 || words[1].front() != '-' || !words[1].ends_with("->"))
          sc.fail("edge must look like 'q -a-> r'", at);
        const std::string label = words[1].substr(1, words[1].size() - 3);
        const auto sym = alphabet.find(label);
        if (!sym) sc.fail("edge label '" + label + "' not in alphabet", at);
        auto id = [&](const std::string& name) {
          return states.emplace(name, static_cast<State>(states.size())).first->second;
        };
        const State from = id(words[0]);
        const State to = id(words[2]);
        edges.push_back({from, *sym, to});
      }
      start = end + 1;
    }
    if (edges.empty()) sc.fail("empty edge list", v.pos);
    def.shift = shift_from_graph(LabeledGraph(alphabet, states.size(), std::move(edges)), sided);
  }
  return def;
}

CodeDefinition parse_code(Scanner& sc) {
  const Pos head = sc.pos();
  const std::string name = sc.word();
  sc.expect('{');
  std::map<std::string, Value> fields;
  std::vector<std::pair<Value, Value>> rules;
  while (sc.peek() != '}') {
    if (sc.peek() == '\0') sc.fail("unexpected end of file in code block");
    const Pos at = sc.pos();
    const std::string key = sc.word();
    if (key == "rule") {
      const Pos wpos = sc.pos();
      Value window{sc.quoted(), {wpos.line, wpos.column + 1}};
      sc.expect_arrow();
      const Pos opos = sc.pos();
      Value out{sc.peek() == '"' ? sc.quoted() : sc.word(), opos};
      sc.expect(';');
      rules.emplace_back(std::move(window), std::move(out));
      continue;
    }
    if (key != "memory" && key != "anticipation" && key != "domain" && key != "codomain")
      sc.fail("unknown code field '" + key + "'", at);
    if (fields.contains(key)) sc.fail("duplicate field '" + key + "'", at);
    sc.expect('=');
    fields[key] = sc.until_semicolon();
  }
  sc.expect('}');
  auto number = [&](const std::string& key) -> std::size_t {
    if (!fields.contains(key)) return 0;
    const auto words = split_ws(fields[key].text);
    if (words.size() != 1 || words[0].find_first_not_of("0123456789") != std::string::npos)
      sc.fail(key + " must be a non-negative integer", fields[key].pos);
    return std::stoul(words[0]);
  };
  const std::size_t memory = number("memory");
  const std::size_t anticipation = number("anticipation");
  if (rules.empty()) sc.fail("code '" + name + "' has no rules", head);
  Alphabet domain;
  if (fields.contains("domain")) {
    if (split_ws(fields["domain"].text).empty()) sc.fail("empty alphabet", fields["domain"].pos);
    domain = Alphabet(split_ws(fields["domain"].text));
  } else {
    std::set<std::string> seen;
    for (const auto& [w, out] : rules)
      for (char c : w.text)
        if (!std::isspace(static_cast<unsigned char>(c))) seen.insert(std::string(1, c));
    domain = Alphabet(std::vector<std::string>(seen.begin(), seen.end()));
  }
  Alphabet codomain;
  if (fields.contains("codomain")) {
    if (split_ws(fields["codomain"].text).empty()) sc.fail("empty alphabet", fields["codomain"].pos);
    codomain = Alphabet(split_ws(fields["codomain"].text));
  } else {
    std::set<std::string> seen;
    for (const auto& [w, out] : rules) seen.insert(out.text);
    codomain = Alphabet(std::vector<std::string>(seen.begin(), seen.end()));
  }
  SlidingBlockCode::Rule table;
  for (const auto& [w, out] : rules) {
    Word word = parse_word_at(domain, w, sc);
    if (word.size() != memory + 1 + anticipation)
      sc.fail("rule window must have length memory + 1 + anticipation", w.pos);
    const auto sym = codomain.find(out.text);
    if (!sym) sc.fail("rule output '" + out.text + "' not in codomain", out.pos);
    if (!table.emplace(std::move(word), *sym).second) sc.fail("duplicate rule window", w.pos);
  }
  return {name, SlidingBlockCode(domain, codomain, memory, anticipation, std::move(table))};
}

}  // namespace

const ShiftPresentation& Definitions::shift(std::string_view name) const {
  if (name.empty()) {
    if (shifts.size() != 1) throw Error("several shifts defined; name one");
    return shifts.front().shift;
  }
  for (const auto& d : shifts)
    if (d.name == name) return d.shift;
  throw Error("no shift named '" + std::string(name) + "'");
}

const SlidingBlockCode& Definitions::code(std::string_view name) const {
  for (const auto& d : codes)
    if (d.name == name) return d.code;
  throw Error("no code named '" + std::string(name) + "'");
}

bool Definitions::has_shift(std::string_view name) const {
  for (const auto& d : shifts)
    if (d.name == name) return true;
  return false;
}

bool Definitions::has_code(std::string_view name) const {
  for (const auto& d : codes)
    if (d.name == name) return true;
  return false;
}

Definitions parse_definitions(std::string_view text) {
  Scanner sc(text);
  Definitions defs;
  while (!sc.done()) {
    const Pos at = sc.pos();
    const std::string kind = sc.word();
    if (kind == "shift") {
      auto d = parse_shift(sc);
      if (defs.has_shift(d.name)) sc.fail("shift '" + d.name + "' defined twice", at);
      defs.shifts.push_back(std::move(d));
    } else if (kind == "code") {
      auto d = parse_code(sc);
      if (defs.has_code(d.name)) sc.fail("code '" + d.name + "' defined twice", at);
      defs.codes.push_back(std::move(d));
    } else {
      sc.fail("expected 'shift' or 'code'", at);
    }
  }
  return defs;
}

Definitions load_definitions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_definitions(buf.str());
}

}  // namespace symdyn
