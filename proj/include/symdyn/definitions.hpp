#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symdyn/codes.hpp"

namespace symdyn {

struct ShiftDefinition {
  std::string name;
  ShiftPresentation shift;
};

struct CodeDefinition {
  std::string name;
  SlidingBlockCode code;
};

/// Contents of a definitions file:
///
///   shift golden { alphabet = 0 1; forbid = "11"; sided = two; }
///   shift even { alphabet = 0 1; regex = "(1(00)*)*"; }
///   shift g { alphabet = a b; graph = p -a-> q, q -b-> p, q -a-> q; }
///   code swap { memory = 0; anticipation = 0; rule "0" -> 1; rule "1" -> 0; }
///
/// `#` starts a comment. Codes may declare `domain = ...;` and `codomain = ...;`,
/// otherwise both alphabets are read off the rules.
struct Definitions {
  std::vector<ShiftDefinition> shifts;
  std::vector<CodeDefinition> codes;

  /// By name; an empty name selects the only shift in the file.
  const ShiftPresentation& shift(std::string_view name = {}) const;
  const SlidingBlockCode& code(std::string_view name) const;
  bool has_shift(std::string_view name) const;
  bool has_code(std::string_view name) const;
};

Definitions parse_definitions(std::string_view text);
Definitions load_definitions(const std::string& path);

}  // namespace symdyn
