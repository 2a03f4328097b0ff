#include "sleec/translate.hpp"

#include <cassert>
#include <map>
#include <set>

#include "sleec/goal_validate.hpp"
#include "sleec/printer.hpp"

namespace sleec {

namespace {

std::string task_rule_id(int index, const std::string& suffix) {
  return "RuleT" + std::to_string(index) + "_" + suffix;
}

// norm_principle/proxy of the goal itself, or of the nearest normative
// ancestor along refinement edges for tasks and non-normative goals.
struct ValueContext {
  std::optional<std::string> principle;
  std::optional<std::string> proxy;
};

ValueContext value_context_for(const GoalModel& model, const std::string& id) {
  std::map<std::string, std::string> parent_of;
  for (const auto& r : model.refinements)
    for (const auto& child : r.children)
      parent_of.emplace(child, r.parent);

  std::set<std::string> visited; // the model may not be cycle free yet
  std::string current = id;
  while (visited.insert(current).second) {
    if (const Goal* goal = find_goal(model, current)) {
      if (goal->kind == GoalKind::Normative && goal->normative)
        return {goal->normative->norm_principle, goal->normative->proxy};
    }
    auto up = parent_of.find(current);
    if (up == parent_of.end())
      break;
    current = up->second;
  }
  return {};
}

TraceEntry make_entry(std::string generated, std::string source,
                      std::string attribute, std::string template_id,
                      const ValueContext& ctx) {
  TraceEntry e;
  e.generated = std::move(generated);
  e.source = std::move(source);
  e.attribute = std::move(attribute);
  e.template_id = std::move(template_id);
  e.norm_principle = ctx.principle;
  e.proxy = ctx.proxy;
  return e;
}

} // namespace

const TraceEntry* TraceabilityMap::entry_for(
    const std::string& generated_id) const {
  for (const auto& e : entries)
    if (e.generated == generated_id)
      return &e;
  return nullptr;
}

nlohmann::json traceability_to_json(const TraceabilityMap& map) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : map.entries) {
    nlohmann::json j;
    j["generated"] = e.generated;
    j["source"] = e.source;
    j["attribute"] = e.attribute;
    j["template"] = e.template_id;
    if (e.norm_principle)
      j["norm_principle"] = *e.norm_principle;
    if (e.proxy)
      j["proxy"] = *e.proxy;
    entries.push_back(std::move(j));
  }
  return nlohmann::json{{"entries", std::move(entries)}};
}

std::optional<TraceabilityMap> traceability_from_json(const nlohmann::json& j,
                                                      std::string& error) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    error = "expected an object with an \"entries\" array";
    return std::nullopt;
  }
  TraceabilityMap map;
  for (const auto& item : j["entries"]) {
    if (!item.is_object()) {
      error = "entry is not an object";
      return std::nullopt;
    }
    TraceEntry e;
    for (const char* field : {"generated", "source", "attribute", "template"}) {
      if (!item.contains(field) || !item[field].is_string()) {
        error = std::string("entry is missing string field \"") + field + "\"";
        return std::nullopt;
      }
    }
    e.generated = item["generated"].get<std::string>();
    e.source = item["source"].get<std::string>();
    e.attribute = item["attribute"].get<std::string>();
    e.template_id = item["template"].get<std::string>();
    if (item.contains("norm_principle")) {
      if (!item["norm_principle"].is_string()) {
        error = "norm_principle must be a string";
        return std::nullopt;
      }
      e.norm_principle = item["norm_principle"].get<std::string>();
    }
    if (item.contains("proxy")) {
      if (!item["proxy"].is_string()) {
        error = "proxy must be a string";
        return std::nullopt;
      }
      e.proxy = item["proxy"].get<std::string>();
    }
    map.entries.push_back(std::move(e));
  }
  return map;
}

GoalArtifacts translate_goal(const Goal& goal, int seq) {
  GoalArtifacts out;
  std::string id = "P" + std::to_string(seq);
  if (goal.type == GoalType::Maintain) {
    Purpose p;
    p.id = id;
    p.exists_event = goal.event;
    p.cond = goal.condition;
    p.while_event = goal.context_event;
    out.purpose = std::move(p);
  } else {
    Rule r;
    r.id = id;
    r.trigger_event = goal.context_event;
    r.trigger_cond = goal.condition;
    r.response.polarity = Polarity::Require;
    r.response.event = goal.event;
    out.rule = std::move(r);
  }
  return out;
}

TaskArtifacts translate_task(const Task& task) {
  assert(task.index >= 1);
  TaskArtifacts out;
  std::string id = upper_camel(task.id);
  std::string start = "Start" + id;
  std::string pursuing = "Pursuing" + id;
  std::string achieved = "Achieved" + id;
  std::string report = "ReportFailure" + id;

  for (const auto& name : {start, pursuing, achieved, report})
    out.events.push_back({name, {}});

  out.fluent.task_id = task.id;
  out.fluent.initiating_event = start;
  out.fluent.terminating_event = achieved;
  out.fluent.initially = false;

  Rule t1;
  t1.id = task_rule_id(task.index, "1");
  t1.trigger_event = task.triggering_event;
  t1.trigger_cond = task.pre_cond;
  t1.response.polarity = Polarity::Require;
  t1.response.event = start;
  out.rules.push_back(std::move(t1));

  Rule t2;
  t2.id = task_rule_id(task.index, "2");
  t2.trigger_event = start;
  t2.response.polarity = Polarity::Require;
  t2.response.event = pursuing;
  t2.response.deadline = task.temporal_constraint;
  out.rules.push_back(std::move(t2));

  Rule t3;
  t3.id = task_rule_id(task.index, "3");
  t3.trigger_event = pursuing;
  t3.response.polarity = Polarity::Require;
  t3.response.event = achieved;
  if (!condition_is_literal_true(task.post_cond)) {
    t3.trigger_cond = task.post_cond;
    Defeater d;
    d.cond = cond_not(task.post_cond);
    Response dr;
    dr.polarity = Polarity::Require;
    dr.event = report;
    d.response = dr;
    t3.defeaters.push_back(std::move(d));
  }
  out.rules.push_back(std::move(t3));

  if (task.obstacle_event) {
    Rule obstacle;
    obstacle.id = task_rule_id(task.index, "Obstacle");
    obstacle.trigger_event = *task.obstacle_event;
    obstacle.response.polarity = Polarity::Forbid;
    obstacle.response.event = pursuing;
    out.rules.push_back(std::move(obstacle));
  }
  return out;
}

TranslationResult translate_model(const GoalModel& model) {
  GoalModel indexed = assign_task_indices(model);

  TranslationResult out;
  out.spec.events = indexed.events;
  out.spec.measures = indexed.measures;

  std::set<std::string> taken;
  for (const auto& e : indexed.events)
    taken.insert(e.name);
  for (const auto& m : indexed.measures)
    taken.insert(m.name);
  auto claim = [&](const std::string& name, const std::string& what) {
    if (!taken.insert(name).second)
      throw NameCollisionError("generated " + what + " '" + name +
                               "' collides with an existing name");
  };

  for (size_t i = 0; i < indexed.goals.size(); ++i) {
    GoalArtifacts art = translate_goal(indexed.goals[i], static_cast<int>(i) + 1);
    if (art.rule) {
      claim(art.rule->id, "rule id");
      out.spec.rules.push_back(std::move(*art.rule));
    }
    if (art.purpose) {
      claim(art.purpose->id, "purpose id");
      out.spec.purposes.push_back(std::move(*art.purpose));
    }
  }
  for (const auto& task : indexed.tasks) {
    TaskArtifacts art = translate_task(task);
    for (const auto& e : art.events) {
      claim(e.name, "event");
      out.spec.events.push_back(e);
    }
    for (auto& rule : art.rules) {
      claim(rule.id, "rule id");
      out.spec.rules.push_back(std::move(rule));
    }
    out.fluents.push_back(std::move(art.fluent));
  }

  out.map = build_traceability(indexed, out.spec);
  return out;
}

TraceabilityMap build_traceability(const GoalModel& model,
                                   const SleecSpec& spec) {
  GoalModel indexed = assign_task_indices(model);
  TraceabilityMap map;

  for (size_t i = 0; i < indexed.goals.size(); ++i) {
    const Goal& goal = indexed.goals[i];
    ValueContext ctx = value_context_for(indexed, goal.id);
    std::string id = "P" + std::to_string(i + 1);
    if (goal.type == GoalType::Maintain)
      map.entries.push_back(
          make_entry(id, goal.id, "maintain_goal", "P1", ctx));
    else
      map.entries.push_back(make_entry(id, goal.id, "achieve_goal", "P2", ctx));
  }

  for (const auto& task : indexed.tasks) {
    ValueContext ctx = value_context_for(indexed, task.id);
    std::string id = upper_camel(task.id);
    map.entries.push_back(make_entry(task_rule_id(task.index, "1"), task.id,
                                     "triggering_event", "T1", ctx));
    map.entries.push_back(make_entry(task_rule_id(task.index, "2"), task.id,
                                     "temporal_constraint", "T2", ctx));
    map.entries.push_back(
        make_entry(task_rule_id(task.index, "3"), task.id, "post_cond", "T3", ctx));
    if (task.obstacle_event)
      map.entries.push_back(make_entry(task_rule_id(task.index, "Obstacle"),
                                       task.id, "obstacle_event", "Obstacle",
                                       ctx));
    map.entries.push_back(
        make_entry("Start" + id, task.id, "fluent", "T1", ctx));
    map.entries.push_back(
        make_entry("Pursuing" + id, task.id, "fluent", "T2", ctx));
    map.entries.push_back(
        make_entry("Achieved" + id, task.id, "fluent", "T3", ctx));
    map.entries.push_back(
        make_entry("ReportFailure" + id, task.id, "fluent", "T3", ctx));
  }

  for (const auto& rule : spec.rules)
    assert(map.entry_for(rule.id) != nullptr);
  for (const auto& purpose : spec.purposes)
    assert(map.entry_for(purpose.id) != nullptr);
  (void)spec;
  return map;
}

std::string render_translation(const TranslationResult& result) {
  std::string out;
  for (const auto& fluent : result.fluents) {
    out += "// fluent " + upper_camel(fluent.task_id) + " = <{" +
           fluent.initiating_event + "}, {" + fluent.terminating_event +
           "}> initially " + (fluent.initially ? "true" : "false") + "\n";
  }
  if (!result.fluents.empty())
    out += "\n";
  out += print_sleec(result.spec);
  return out;
}

} // namespace sleec
