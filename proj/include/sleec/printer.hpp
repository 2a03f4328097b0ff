#pragma once

#include <string>

#include "sleec/ast.hpp"

namespace sleec {

// Canonical pretty-printer. Deterministic: the same spec always yields the
// same bytes, and parse(print(s)) is structurally equal to s.
//
// Formatting rules:
//   - def/rule blocks always present, purpose block only when non-empty
//   - four-space indent for items, defeaters continued on their own lines
//   - conditions print bare when they are an atom or "not <atom>", and
//     parenthesized otherwise
std::string print_sleec(const SleecSpec& spec);

std::string print_rule(const Rule& rule);
std::string print_purpose(const Purpose& purpose);
std::string print_condition(const ConditionPtr& cond);
std::string print_response(const Response& response);
std::string print_duration(const Duration& d);

} // namespace sleec
