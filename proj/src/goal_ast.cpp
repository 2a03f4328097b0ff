#include "sleec/goal_ast.hpp"

#include <cctype>

namespace sleec {

const char* goal_kind_name(GoalKind kind) {
  switch (kind) {
  case GoalKind::Functional: return "functional";
  case GoalKind::Normative: return "normative";
  case GoalKind::Adaptation: return "adaptation";
  }
  return "?";
}

const char* goal_type_name(GoalType type) {
  switch (type) {
  case GoalType::Maintain: return "maintain";
  case GoalType::Achieve: return "achieve";
  }
  return "?";
}

const char* norm_class_name(NormClass c) {
  switch (c) {
  case NormClass::Social: return "Social";
  case NormClass::Legal: return "Legal";
  case NormClass::Ethical: return "Ethical";
  case NormClass::Empathetic: return "Empathetic";
  case NormClass::Cultural: return "Cultural";
  }
  return "?";
}

const Goal* find_goal(const GoalModel& model, const std::string& id) {
  for (const auto& goal : model.goals)
    if (goal.id == id)
      return &goal;
  return nullptr;
}

const Task* find_task(const GoalModel& model, const std::string& id) {
  for (const auto& task : model.tasks)
    if (task.id == id)
      return &task;
  return nullptr;
}

std::string upper_camel(const std::string& id) {
  std::string out;
  bool upper_next = true;
  for (char ch : id) {
    if (ch == '_') {
      upper_next = true;
      continue;
    }
    out.push_back(upper_next ? static_cast<char>(std::toupper(
                                   static_cast<unsigned char>(ch)))
                             : ch);
    upper_next = false;
  }
  return out;
}

std::vector<std::string> derived_task_events(const Task& task) {
  std::string id = upper_camel(task.id);
  return {"Start" + id, "Pursuing" + id, "Achieved" + id, "ReportFailure" + id};
}

} // namespace sleec
