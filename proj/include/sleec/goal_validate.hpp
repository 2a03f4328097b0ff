#pragma once

#include <vector>

#include "sleec/diagnostics.hpp"
#include "sleec/goal_ast.hpp"

namespace sleec {

// Whole-model validation:
//   - vocabulary declarations follow the same rules as the rule language
//   - goal/task/vocabulary ids are unique across the model
//   - event attributes resolve to declared events or derived task lifecycle
//     events (StartX, PursuingX, AchievedX, ReportFailureX); conditions are
//     well typed over the declared measures
//   - normative goals carry source, class (nonempty), norm_principle, proxy
//     and added_value; other goals carry none of these
//   - refinements form a forest rooted at goals: parents are goals, each
//     node has at most one parent, no cycles, children are distinct and do
//     not include the parent
//   - every goal is refined (UnrefinedGoal for roots, NonTaskLeaf for goals
//     reached by a refinement that have none of their own) and every task
//     appears in exactly one refinement (OrphanTask otherwise)
std::vector<Diagnostic> validate_goal_model(const GoalModel& model);

// Returns a copy with task.index set to the 1-based declaration position.
// Indices are a pure function of declaration order, so re-parsing the same
// document always reproduces them.
GoalModel assign_task_indices(const GoalModel& model);

} // namespace sleec
