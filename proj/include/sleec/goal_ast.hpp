#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sleec/ast.hpp"

namespace sleec {

enum class GoalKind { Functional, Normative, Adaptation };
enum class GoalType { Maintain, Achieve };

const char* goal_kind_name(GoalKind kind);
const char* goal_type_name(GoalType type);

// Stakeholder classes a normative goal can carry.
enum class NormClass { Social, Legal, Ethical, Empathetic, Cultural };

const char* norm_class_name(NormClass c);

struct NormativeAttrs {
  std::vector<std::string> source; // provenance documents
  std::vector<NormClass> classes;  // nonempty after validation
  std::string norm_principle;
  std::string proxy;
  std::string added_value;
};

struct Goal {
  std::string id;
  GoalKind kind = GoalKind::Functional;
  GoalType type = GoalType::Achieve;
  ConditionPtr condition; // null when written as "true"
  std::string event;
  std::string context_event;
  std::string def;
  std::optional<std::string> formal_def;
  std::optional<NormativeAttrs> normative; // present iff kind == Normative
  SourceLoc loc;
};

struct Task {
  std::string id;
  std::string def;
  ConditionPtr pre_cond;  // null means true (attribute omitted)
  std::string triggering_event;
  Duration temporal_constraint;
  ConditionPtr post_cond; // never null
  std::optional<std::string> obstacle_event;
  int index = 0; // 1-based declaration position, set by assign_task_indices
  SourceLoc loc;
};

enum class RefineMode { And, Or };

struct Refinement {
  std::string parent; // goal id
  RefineMode mode = RefineMode::And;
  std::vector<std::string> children; // goal or task ids
  SourceLoc loc;
};

struct GoalModel {
  std::string system_name;
  std::vector<EventDef> events;
  std::vector<MeasureDef> measures;
  std::vector<Goal> goals;
  std::vector<Task> tasks;
  std::vector<Refinement> refinements;
};

const Goal* find_goal(const GoalModel& model, const std::string& id);
const Task* find_task(const GoalModel& model, const std::string& id);

// Task lifecycle events derived during translation. Goal and task attributes
// may reference these in addition to the declared vocabulary.
std::vector<std::string> derived_task_events(const Task& task);
std::string upper_camel(const std::string& id);

} // namespace sleec
