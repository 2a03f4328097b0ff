#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sleec/diagnostics.hpp"
#include "sleec/goal_ast.hpp"

namespace sleec {

// Parses a goal-model document:
//
//   system Name
//   vocabulary_start ... vocabulary_end
//   goal_start ... goal_end
//   task_start ... task_end
//   refinement_start ... refinement_end
//
// Goals open with functional_goal / normative_goal / adaptation_goal and
// tasks with task, each followed by "key: value" attributes. "&" is accepted
// as a synonym for "and" inside condition values. Structurally required
// attributes missing from an element yield MissingAttribute; the
// normative-only attributes are checked later by validate_goal_model so a
// parseable model can still be reported properly.
std::optional<GoalModel> parse_goal_model(std::string_view src,
                                          std::vector<Diagnostic>& diags);

} // namespace sleec
