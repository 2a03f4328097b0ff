#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sleec/ast.hpp"
#include "sleec/diagnostics.hpp"

namespace sleec {

// Parses a rule-language document:
//
//   def_start ... def_end
//   rule_start ... rule_end
//   purpose_start ... purpose_end   (optional)
//
// Purely syntactic; name resolution and typing happen in sema. Stops at the
// first syntax error, reporting it with line/column and the expected tokens.
// "within 0 <unit>" is rejected here because a zero deadline has no meaning
// on any tick scale.
std::optional<SleecSpec> parse_sleec(std::string_view src,
                                     std::vector<Diagnostic>& diags);

// True for words that cannot be used as event/measure/rule identifiers.
bool is_reserved_word(std::string_view word);

} // namespace sleec
