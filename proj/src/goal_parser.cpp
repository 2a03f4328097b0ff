#include "sleec/goal_parser.hpp"

#include <set>

#include "parse_util.hpp"
#include "sleec/lexer.hpp"

namespace sleec {

using detail::Cursor;

namespace {

bool at_goal_header(const Cursor& c) {
  return c.at_word("functional_goal") || c.at_word("normative_goal") ||
         c.at_word("adaptation_goal");
}

// "key:" introduces an attribute; anything else ends the attribute list.
bool at_attribute_key(const Cursor& c) {
  return c.at(Tok::Ident) && c.peek(1).kind == Tok::Colon;
}

std::optional<std::string> parse_text_value(Cursor& c, const std::string& key) {
  if (c.at(Tok::String))
    return c.next().text;
  if (c.at(Tok::Ident))
    return c.next().text;
  c.error("expected quoted text after '" + key + ":'");
  return std::nullopt;
}

// Normalizes a literal `true` to "no condition" so downstream printing elides
// the clause entirely.
ConditionPtr parse_condition_value(Cursor& c) {
  ConditionPtr cond = detail::parse_condition(c);
  if (cond && condition_is_literal_true(cond))
    return nullptr;
  return cond;
}

bool parse_vocabulary(Cursor& c, GoalModel& model) {
  while (!c.at_word("vocabulary_end")) {
    if (c.done()) {
      c.error("expected 'vocabulary_end'");
      return false;
    }
    if (c.eat_word("event")) {
      SourceLoc loc;
      auto name = detail::parse_name(c, "event name", &loc);
      if (!name)
        return false;
      model.events.push_back({*name, loc});
      continue;
    }
    if (c.eat_word("measure")) {
      SourceLoc loc;
      auto name = detail::parse_name(c, "measure name", &loc);
      if (!name)
        return false;
      if (!c.expect(Tok::Colon, "':' after measure name"))
        return false;
      MeasureDef m;
      m.name = *name;
      m.loc = loc;
      if (c.eat_word("boolean")) {
        m.sort = Sort::Boolean;
      } else if (c.eat_word("numeric")) {
        m.sort = Sort::Numeric;
      } else if (c.eat_word("scale")) {
        m.sort = Sort::Scale;
        if (!c.expect(Tok::LParen, "'(' after scale"))
          return false;
        do {
          auto value = detail::parse_name(c, "scale value");
          if (!value)
            return false;
          m.scale_values.push_back(*value);
        } while (c.eat(Tok::Comma));
        if (!c.expect(Tok::RParen, "')' closing scale values"))
          return false;
        if (m.scale_values.size() < 2) {
          c.error_at(loc, "scale must declare at least two values");
          return false;
        }
      } else {
        c.error("expected measure sort (boolean, numeric or scale)");
        return false;
      }
      model.measures.push_back(std::move(m));
      continue;
    }
    c.error("expected 'event' or 'measure' declaration");
    return false;
  }
  c.next(); // vocabulary_end
  return true;
}

void report_missing(std::vector<Diagnostic>& diags, SourceLoc loc,
                    const std::string& element, const std::string& id,
                    const std::string& attribute) {
  Diagnostic d;
  d.kind = DiagKind::MissingAttribute;
  d.loc = loc;
  d.message = element + " '" + id + "' is missing attribute '" + attribute + "'";
  d.subject = id;
  diags.push_back(std::move(d));
}

std::optional<NormClass> norm_class_from(const std::string& word) {
  if (word == "Social") return NormClass::Social;
  if (word == "Legal") return NormClass::Legal;
  if (word == "Ethical") return NormClass::Ethical;
  if (word == "Empathetic") return NormClass::Empathetic;
  if (word == "Cultural") return NormClass::Cultural;
  return std::nullopt;
}

bool parse_goal(Cursor& c, GoalModel& model, std::vector<Diagnostic>& diags) {
  Goal goal;
  goal.loc = c.peek().loc;
  if (c.eat_word("functional_goal"))
    goal.kind = GoalKind::Functional;
  else if (c.eat_word("normative_goal"))
    goal.kind = GoalKind::Normative;
  else if (c.eat_word("adaptation_goal"))
    goal.kind = GoalKind::Adaptation;

  auto id = detail::parse_name(c, "goal id");
  if (!id)
    return false;
  goal.id = *id;
  if (goal.kind == GoalKind::Normative)
    goal.normative = NormativeAttrs{};

  std::set<std::string> seen;
  while (at_attribute_key(c)) {
    SourceLoc key_loc = c.peek().loc;
    std::string key = c.next().text;
    c.next(); // colon
    if (!seen.insert(key).second) {
      c.error_at(key_loc, "duplicate attribute '" + key + "'");
      return false;
    }
    bool normative_only =
        key == "source" || key == "class" || key == "norm_principle" ||
        key == "proxy" || key == "added_value";
    if (normative_only && goal.kind != GoalKind::Normative) {
      c.error_at(key_loc,
                 "attribute '" + key + "' is only valid on a normative_goal");
      return false;
    }

    if (key == "type") {
      if (c.eat_word("maintain"))
        goal.type = GoalType::Maintain;
      else if (c.eat_word("achieve"))
        goal.type = GoalType::Achieve;
      else {
        c.error("expected 'maintain' or 'achieve'");
        return false;
      }
    } else if (key == "condition") {
      goal.condition = parse_condition_value(c);
      if (c.failed())
        return false;
    } else if (key == "event") {
      auto name = detail::parse_name(c, "event name");
      if (!name)
        return false;
      goal.event = *name;
    } else if (key == "context_event") {
      auto name = detail::parse_name(c, "context event name");
      if (!name)
        return false;
      goal.context_event = *name;
    } else if (key == "def") {
      auto text = parse_text_value(c, key);
      if (!text)
        return false;
      goal.def = *text;
    } else if (key == "formal_def") {
      auto text = parse_text_value(c, key);
      if (!text)
        return false;
      goal.formal_def = *text;
    } else if (key == "source") {
      do {
        auto text = parse_text_value(c, key);
        if (!text)
          return false;
        goal.normative->source.push_back(*text);
      } while (c.eat(Tok::Comma));
    } else if (key == "class") {
      do {
        SourceLoc loc = c.peek().loc;
        if (!c.at(Tok::Ident)) {
          c.error("expected a stakeholder class name");
          return false;
        }
        std::string word = c.next().text;
        auto cls = norm_class_from(word);
        if (!cls) {
          c.error_at(loc, "unknown stakeholder class '" + word +
                              "' (expected Social, Legal, Ethical, "
                              "Empathetic or Cultural)");
          return false;
        }
        goal.normative->classes.push_back(*cls);
      } while (c.eat(Tok::Comma));
    } else if (key == "norm_principle") {
      auto text = parse_text_value(c, key);
      if (!text)
        return false;
      goal.normative->norm_principle = *text;
    } else if (key == "proxy") {
      auto text = parse_text_value(c, key);
      if (!text)
        return false;
      goal.normative->proxy = *text;
    } else if (key == "added_value") {
      auto text = parse_text_value(c, key);
      if (!text)
        return false;
      goal.normative->added_value = *text;
    } else {
      c.error_at(key_loc, "unknown goal attribute '" + key + "'");
      return false;
    }
  }

  for (const char* required :
       {"type", "condition", "event", "context_event", "def"})
    if (!seen.count(required))
      report_missing(diags, goal.loc, "goal", goal.id, required);
  model.goals.push_back(std::move(goal));
  return true;
}

bool parse_task(Cursor& c, GoalModel& model, std::vector<Diagnostic>& diags) {
  Task task;
  task.loc = c.peek().loc;
  c.next(); // task

  auto id = detail::parse_name(c, "task id");
  if (!id)
    return false;
  task.id = *id;

  std::set<std::string> seen;
  while (at_attribute_key(c)) {
    SourceLoc key_loc = c.peek().loc;
    std::string key = c.next().text;
    c.next(); // colon
    if (!seen.insert(key).second) {
      c.error_at(key_loc, "duplicate attribute '" + key + "'");
      return false;
    }

    if (key == "def") {
      auto text = parse_text_value(c, key);
      if (!text)
        return false;
      task.def = *text;
    } else if (key == "pre_cond") {
      task.pre_cond = parse_condition_value(c);
      if (c.failed())
        return false;
    } else if (key == "triggering_event") {
      auto name = detail::parse_name(c, "triggering event name");
      if (!name)
        return false;
      task.triggering_event = *name;
    } else if (key == "temporal_constraint") {
      auto d = detail::parse_duration(c);
      if (!d)
        return false;
      task.temporal_constraint = *d;
    } else if (key == "post_cond") {
      // Kept verbatim, a literal `true` included; the translator decides how
      // to render trivial post conditions.
      task.post_cond = detail::parse_condition(c);
      if (!task.post_cond)
        return false;
    } else if (key == "obstacle_event") {
      auto name = detail::parse_name(c, "obstacle event name");
      if (!name)
        return false;
      task.obstacle_event = *name;
    } else {
      c.error_at(key_loc, "unknown task attribute '" + key + "'");
      return false;
    }
  }

  for (const char* required :
       {"def", "triggering_event", "temporal_constraint", "post_cond"})
    if (!seen.count(required))
      report_missing(diags, task.loc, "task", task.id, required);
  model.tasks.push_back(std::move(task));
  return true;
}

bool parse_refinement(Cursor& c, GoalModel& model) {
  Refinement r;
  r.loc = c.peek().loc;
  auto parent = detail::parse_name(c, "refinement parent");
  if (!parent)
    return false;
  r.parent = *parent;
  if (c.eat_word("and_refines"))
    r.mode = RefineMode::And;
  else if (c.eat_word("or_refines"))
    r.mode = RefineMode::Or;
  else {
    c.error("expected 'and_refines' or 'or_refines'");
    return false;
  }
  do {
    auto child = detail::parse_name(c, "refinement child");
    if (!child)
      return false;
    r.children.push_back(*child);
  } while (c.eat(Tok::Comma));
  model.refinements.push_back(std::move(r));
  return true;
}

} // namespace

std::optional<GoalModel> parse_goal_model(std::string_view src,
                                          std::vector<Diagnostic>& diags) {
  size_t diags_before = diags.size();
  std::vector<Token> tokens;
  if (!lex(src, tokens, diags))
    return std::nullopt;
  Cursor c(std::move(tokens), diags);

  GoalModel model;
  if (!c.expect_word("system"))
    return std::nullopt;
  auto name = detail::parse_name(c, "system name");
  if (!name)
    return std::nullopt;
  model.system_name = *name;

  if (c.eat_word("vocabulary_start")) {
    if (!parse_vocabulary(c, model))
      return std::nullopt;
  }
  if (c.eat_word("goal_start")) {
    while (!c.eat_word("goal_end")) {
      if (c.done()) {
        c.error("expected 'goal_end'");
        return std::nullopt;
      }
      if (!at_goal_header(c)) {
        c.error("expected functional_goal, normative_goal or adaptation_goal");
        return std::nullopt;
      }
      if (!parse_goal(c, model, diags))
        return std::nullopt;
    }
  }
  if (c.eat_word("task_start")) {
    while (!c.eat_word("task_end")) {
      if (c.done()) {
        c.error("expected 'task_end'");
        return std::nullopt;
      }
      if (!c.at_word("task")) {
        c.error("expected 'task'");
        return std::nullopt;
      }
      if (!parse_task(c, model, diags))
        return std::nullopt;
    }
  }
  if (c.eat_word("refinement_start")) {
    while (!c.eat_word("refinement_end")) {
      if (c.done()) {
        c.error("expected 'refinement_end'");
        return std::nullopt;
      }
      if (!parse_refinement(c, model))
        return std::nullopt;
    }
  }
  if (!c.done()) {
    c.error("unexpected trailing input after the last block");
    return std::nullopt;
  }
  // Missing-attribute reports leave the cursor healthy but still fail the
  // parse as a whole.
  if (diags.size() != diags_before)
    return std::nullopt;
  return model;
}

} // namespace sleec
