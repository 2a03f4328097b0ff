#pragma once

#include <random>
#include <string>
#include <vector>

#include "sleec/ast.hpp"
#include "sleec/goal_ast.hpp"
#include "sleec/trace.hpp"

namespace testsupport {

int rand_int(std::mt19937& rng, int lo, int hi);
bool rand_chance(std::mt19937& rng, double p);

// Specs sized for exhaustive cross-checking: at most 3 rules over 4 events
// and 2 boolean measures, deadlines of 1 or 2 seconds, optional defeaters
// and purposes. Always passes name/type checking.
sleec::SleecSpec random_small_spec(std::mt19937& rng, bool with_purposes);

// Wider shapes for print/parse round-trips: every measure sort, every
// duration unit, comparison operators, defeater chains and purposes.
sleec::SleecSpec random_printable_spec(std::mt19937& rng);

struct ModelStats {
  int achieve_goals = 0;
  int maintain_goals = 0;
  int tasks = 0;
  int obstacles = 0;
};

// Structurally valid goal model: a goal tree whose leaves are tasks, every
// task refined exactly once. stats reports the translation size drivers.
sleec::GoalModel random_goal_model(std::mt19937& rng, ModelStats* stats);

// Arbitrary trace over the spec's vocabulary, at most max_events_per_tick
// events per tick, uniformly random measure values.
sleec::Trace random_trace(std::mt19937& rng, const sleec::SleecSpec& spec,
                          int length, int max_events_per_tick);

} // namespace testsupport
