#include "sleec/goal_validate.hpp"

#include <map>
#include <set>
#include <string>

#include "sleec/sema.hpp"

namespace sleec {

namespace {

struct Validator {
  const GoalModel& model;
  std::vector<Diagnostic> out;
  SymbolTable table;
  std::set<std::string> known_events; // declared + derived task lifecycle

  void add(DiagKind kind, SourceLoc loc, std::string message,
           std::string subject = "", std::string context = "") {
    Diagnostic d;
    d.kind = kind;
    d.loc = loc;
    d.message = std::move(message);
    d.subject = std::move(subject);
    d.context = std::move(context);
    out.push_back(std::move(d));
  }

  void check_event_ref(const std::string& name, SourceLoc loc,
                       const std::string& attribute,
                       const std::string& context) {
    if (name.empty() || known_events.count(name))
      return;
    add(DiagKind::UndeclaredIdentifier, loc,
        attribute + " '" + name +
            "' is neither a declared event nor a task lifecycle event",
        name, context);
  }

  void check_ids() {
    std::map<std::string, std::string> owner; // name -> what declared it
    auto declare = [&](const std::string& name, const std::string& what,
                       SourceLoc loc) {
      auto [it, fresh] = owner.emplace(name, what);
      if (!fresh)
        add(DiagKind::DuplicateDefinition, loc,
            what + " '" + name + "' is already declared as " + it->second,
            name);
    };
    for (const auto& e : model.events)
      declare(e.name, "event", e.loc);
    for (const auto& m : model.measures)
      declare(m.name, "measure", m.loc);
    for (const auto& g : model.goals)
      declare(g.id, "goal", g.loc);
    for (const auto& t : model.tasks)
      declare(t.id, "task", t.loc);
  }

  void check_goals() {
    for (const auto& goal : model.goals) {
      check_event_ref(goal.event, goal.loc, "event", goal.id);
      check_event_ref(goal.context_event, goal.loc, "context_event", goal.id);
      check_condition(goal.condition, table, goal.id, out);

      if (goal.kind != GoalKind::Normative)
        continue;
      const NormativeAttrs& n = *goal.normative;
      auto missing = [&](const std::string& field) {
        add(DiagKind::MissingNormativeAttrs, goal.loc,
            "normative goal '" + goal.id + "' is missing '" + field + "'",
            field, goal.id);
      };
      if (n.source.empty())
        missing("source");
      if (n.classes.empty())
        missing("class");
      if (n.norm_principle.empty())
        missing("norm_principle");
      if (n.proxy.empty())
        missing("proxy");
      if (n.added_value.empty())
        missing("added_value");
    }
  }

  void check_tasks() {
    for (const auto& task : model.tasks) {
      check_event_ref(task.triggering_event, task.loc, "triggering_event",
                      task.id);
      if (task.obstacle_event)
        check_event_ref(*task.obstacle_event, task.loc, "obstacle_event",
                        task.id);
      check_condition(task.pre_cond, table, task.id, out);
      check_condition(task.post_cond, table, task.id, out);
    }
  }

  void check_refinements() {
    std::map<std::string, int> child_parents; // child id -> #refinements using it
    std::set<std::string> refined_goals;
    std::set<std::string> child_ids;

    for (const auto& r : model.refinements) {
      const Goal* parent_goal = find_goal(model, r.parent);
      if (!parent_goal) {
        if (find_task(model, r.parent))
          add(DiagKind::RefinementParentNotGoal, r.loc,
              "refinement parent '" + r.parent + "' is a task", r.parent);
        else
          add(DiagKind::UndeclaredIdentifier, r.loc,
              "refinement parent '" + r.parent + "' is not a declared goal",
              r.parent);
      } else if (!refined_goals.insert(r.parent).second) {
        add(DiagKind::DuplicateDefinition, r.loc,
            "goal '" + r.parent + "' already has a refinement", r.parent);
      }

      std::set<std::string> seen;
      for (const auto& child : r.children) {
        if (!seen.insert(child).second)
          add(DiagKind::DuplicateDefinition, r.loc,
              "child '" + child + "' listed twice in one refinement", child,
              r.parent);
        if (child == r.parent)
          add(DiagKind::CyclicRefinement, r.loc,
              "goal '" + r.parent + "' refines into itself", r.parent);
        if (!find_goal(model, child) && !find_task(model, child)) {
          add(DiagKind::UndeclaredIdentifier, r.loc,
              "refinement child '" + child + "' is not a declared goal or task",
              child, r.parent);
          continue;
        }
        child_parents[child] += 1;
        child_ids.insert(child);
      }
    }

    for (const auto& [child, count] : child_parents)
      if (count > 1)
        add(DiagKind::MultipleParents, {},
            "'" + child + "' is a child of " + std::to_string(count) +
                " refinements",
            child);

    // Forest shape: roots are goals nobody refines into. A root goal without
    // its own refinement is unrefined; a non-root goal without one is a leaf
    // that should have been a task.
    for (const auto& goal : model.goals) {
      if (refined_goals.count(goal.id))
        continue;
      if (child_ids.count(goal.id))
        add(DiagKind::NonTaskLeaf, goal.loc,
            "goal '" + goal.id +
                "' is a refinement leaf; leaves must be tasks",
            goal.id);
      else
        add(DiagKind::UnrefinedGoal, goal.loc,
            "goal '" + goal.id + "' has no refinement", goal.id);
    }
    for (const auto& task : model.tasks)
      if (!child_ids.count(task.id))
        add(DiagKind::OrphanTask, task.loc,
            "task '" + task.id + "' does not appear in any refinement",
            task.id);

    check_cycles();
  }

  // DFS over goal->child-goal edges; a back edge is a cycle. Self-loops are
  // reported where the refinement is declared, so skip them here.
  void check_cycles() {
    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& r : model.refinements)
      for (const auto& child : r.children)
        if (child != r.parent && find_goal(model, child) &&
            find_goal(model, r.parent))
          edges[r.parent].push_back(child);

    std::map<std::string, int> color; // 0 new, 1 on stack, 2 done
    std::set<std::string> reported;
    auto dfs = [&](auto&& self, const std::string& node) -> void {
      color[node] = 1;
      for (const auto& next : edges[node]) {
        if (color[next] == 1) {
          if (reported.insert(next).second)
            add(DiagKind::CyclicRefinement, find_goal(model, next)->loc,
                "refinement cycle through goal '" + next + "'", next);
          continue;
        }
        if (color[next] == 0)
          self(self, next);
      }
      color[node] = 2;
    };
    for (const auto& goal : model.goals)
      if (color[goal.id] == 0)
        dfs(dfs, goal.id);
  }
};

} // namespace

std::vector<Diagnostic> validate_goal_model(const GoalModel& model) {
  Validator v{model};
  v.out = check_definitions(model.events, model.measures);
  v.table = build_symbol_table(model.events, model.measures);
  for (const auto& e : model.events)
    v.known_events.insert(e.name);
  for (const auto& task : model.tasks)
    for (const auto& name : derived_task_events(task))
      v.known_events.insert(name);

  v.check_ids();
  v.check_goals();
  v.check_tasks();
  v.check_refinements();
  return std::move(v.out);
}

GoalModel assign_task_indices(const GoalModel& model) {
  GoalModel out = model;
  for (size_t i = 0; i < out.tasks.size(); ++i)
    out.tasks[i].index = static_cast<int>(i) + 1;
  return out;
}

} // namespace sleec
