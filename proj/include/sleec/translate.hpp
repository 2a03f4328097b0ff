#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sleec/ast.hpp"
#include "sleec/goal_ast.hpp"

#include <json.hpp>

namespace sleec {

// Start/Achieved event pair marking a task's execution interval. Every task
// fluent starts false: no task is running before its Start event.
struct FluentDecl {
  std::string task_id;
  std::string initiating_event;  // Start<Id>
  std::string terminating_event; // Achieved<Id>
  bool initially = false;
};

// Provenance link from one generated artifact back to the model element and
// attribute it operationalizes. norm_principle/proxy are present iff the
// source element sits under a normative goal (for tasks, the nearest
// normative ancestor along refinement edges; for goals, the goal itself).
struct TraceEntry {
  std::string generated;   // rule / purpose / event id
  std::string source;      // goal or task id
  std::string attribute;   // driving attribute of the source element
  std::string template_id; // P1, P2, T1, T2, T3, Obstacle
  std::optional<std::string> norm_principle;
  std::optional<std::string> proxy;
};

struct TraceabilityMap {
  std::vector<TraceEntry> entries;

  const TraceEntry* entry_for(const std::string& generated_id) const;
};

nlohmann::json traceability_to_json(const TraceabilityMap& map);
std::optional<TraceabilityMap> traceability_from_json(const nlohmann::json& j,
                                                      std::string& error);

struct TranslationResult {
  SleecSpec spec;
  TraceabilityMap map;
  std::vector<FluentDecl> fluents;
};

// Raised when a derived name (generated event or rule/purpose id) collides
// with a declared vocabulary name. Translation aborts rather than producing
// a spec that silently merges distinct concepts.
struct NameCollisionError : std::runtime_error {
  explicit NameCollisionError(const std::string& what)
      : std::runtime_error(what) {}
};

// Goal templates, numbered by the goal's 1-based declaration position:
//   maintain: purpose  P<seq> := exists Event and Condition while ContextEvent
//   achieve:  rule     P<seq> := when ContextEvent and Condition then Event
// A maintain goal contributes no rule, only the purpose.
struct GoalArtifacts {
  std::optional<Rule> rule;
  std::optional<Purpose> purpose;
};
GoalArtifacts translate_goal(const Goal& goal, int seq);

// Task templates for task k = task.index:
//   RuleT<k>_1 := when TriggeringEvent and PreCond then Start<Id>
//   RuleT<k>_2 := when Start<Id> then Pursuing<Id> within TemporalConstraint
//   RuleT<k>_3 := when Pursuing<Id> and PostCond then Achieved<Id>
//                 unless not PostCond then ReportFailure<Id>
//   RuleT<k>_Obstacle := when ObstacleEvent then not Pursuing<Id>  (if any)
struct TaskArtifacts {
  std::vector<Rule> rules;
  std::vector<EventDef> events; // Start, Pursuing, Achieved, ReportFailure
  FluentDecl fluent;
};
TaskArtifacts translate_task(const Task& task);

// Full translation: vocabulary copied, goal artifacts in goal order, task
// artifacts in task order. Requires a model that passed validate_goal_model
// (task indices are assigned internally). Deterministic: equal models yield
// byte-identical printed output.
TranslationResult translate_model(const GoalModel& model);

// Provenance map for a spec produced by translate_model on this model. The
// spec is used to cross-check totality: every generated rule and purpose id
// must end up with exactly one entry.
TraceabilityMap build_traceability(const GoalModel& model,
                                   const SleecSpec& spec);

// The generated .sleec text: fluent declarations as header comments followed
// by the printed spec.
std::string render_translation(const TranslationResult& result);

} // namespace sleec
