#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "sleec/ast.hpp"
#include "sleec/diagnostics.hpp"

namespace sleec {

struct MeasureInfo {
  int index = 0;
  Sort sort = Sort::Boolean;
  std::vector<std::string> scale_values;
  std::unordered_map<std::string, int> scale_index;
};

// Name lookup tables for one spec. Built after check_names_and_types passes;
// lookups assume well-formed input.
struct SymbolTable {
  std::unordered_map<std::string, int> event_index; // declaration order
  std::unordered_map<std::string, MeasureInfo> measures;
  std::vector<std::string> event_names;   // by index
  std::vector<std::string> measure_names; // by index

  bool has_event(const std::string& name) const {
    return event_index.count(name) != 0;
  }
  const MeasureInfo* measure(const std::string& name) const {
    auto it = measures.find(name);
    return it == measures.end() ? nullptr : &it->second;
  }
};

// Checks declaration casing (events uppercase-initial, measures lowercase),
// uniqueness, disjoint event/measure namespaces, rule and purpose id
// uniqueness, that every referenced identifier resolves, and that every
// comparison is between a measure and a literal of its sort. Scale order
// comparisons follow declaration order; order comparisons on booleans are
// rejected. Returns all problems found, empty when the spec is clean.
std::vector<Diagnostic> check_names_and_types(const SleecSpec& spec);

// Shared with the goal-model validator, which reuses the same vocabulary
// rules for its event/measure declarations.
std::vector<Diagnostic> check_definitions(const std::vector<EventDef>& events,
                                          const std::vector<MeasureDef>& measures);

// Diagnostics for one condition in isolation (used by the goal validator).
void check_condition(const ConditionPtr& cond, const SymbolTable& table,
                     const std::string& context, std::vector<Diagnostic>& out);

SymbolTable build_symbol_table(const std::vector<EventDef>& events,
                               const std::vector<MeasureDef>& measures);
SymbolTable build_symbol_table(const SleecSpec& spec);

// Common tick scale: gcd of every duration in the spec, in seconds. A spec
// with no durations gets tick_seconds = 1 (one abstract time unit) and an
// empty deadline table.
struct TickScale {
  long long tick_seconds = 1;
  bool has_durations = false;
  std::map<long long, int> ticks_by_seconds; // distinct duration -> ticks
  int max_deadline_ticks = 0;

  int ticks_for(const Duration& d) const;
};

TickScale normalize_durations(const SleecSpec& spec);

} // namespace sleec
