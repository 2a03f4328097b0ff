#include "sleec/ast.hpp"

namespace sleec {

const char* compare_op_text(CompareOp op) {
  switch (op) {
  case CompareOp::Eq: return "=";
  case CompareOp::Ne: return "<>";
  case CompareOp::Lt: return "<";
  case CompareOp::Le: return "<=";
  case CompareOp::Gt: return ">";
  case CompareOp::Ge: return ">=";
  }
  return "?";
}

Literal Literal::of_bool(bool b) {
  Literal l;
  l.kind = Kind::Bool;
  l.bool_value = b;
  return l;
}

Literal Literal::of_int(long long i) {
  Literal l;
  l.kind = Kind::Int;
  l.int_value = i;
  return l;
}

Literal Literal::of_name(std::string n) {
  Literal l;
  l.kind = Kind::Name;
  l.name = std::move(n);
  return l;
}

bool operator==(const Literal& a, const Literal& b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Literal::Kind::Bool: return a.bool_value == b.bool_value;
  case Literal::Kind::Int: return a.int_value == b.int_value;
  case Literal::Kind::Name: return a.name == b.name;
  }
  return false;
}

namespace {

std::shared_ptr<Condition> make_cond(Condition::Kind kind) {
  auto c = std::make_shared<Condition>();
  c->kind = kind;
  return c;
}

} // namespace

ConditionPtr cond_bool(bool value) {
  auto c = make_cond(Condition::Kind::BoolLit);
  c->bool_value = value;
  return c;
}

ConditionPtr cond_atom(std::string measure, SourceLoc loc) {
  auto c = make_cond(Condition::Kind::Atom);
  c->measure = std::move(measure);
  c->loc = loc;
  return c;
}

ConditionPtr cond_compare(std::string measure, CompareOp op, Literal lit,
                          SourceLoc loc) {
  auto c = make_cond(Condition::Kind::Compare);
  c->measure = std::move(measure);
  c->op = op;
  c->literal = std::move(lit);
  c->loc = loc;
  return c;
}

ConditionPtr cond_not(ConditionPtr inner, SourceLoc loc) {
  auto c = make_cond(Condition::Kind::Not);
  c->lhs = std::move(inner);
  c->loc = loc;
  return c;
}

ConditionPtr cond_and(ConditionPtr a, ConditionPtr b, SourceLoc loc) {
  auto c = make_cond(Condition::Kind::And);
  c->lhs = std::move(a);
  c->rhs = std::move(b);
  c->loc = loc;
  return c;
}

ConditionPtr cond_or(ConditionPtr a, ConditionPtr b, SourceLoc loc) {
  auto c = make_cond(Condition::Kind::Or);
  c->lhs = std::move(a);
  c->rhs = std::move(b);
  c->loc = loc;
  return c;
}

bool conditions_equal(const ConditionPtr& a, const ConditionPtr& b) {
  if (!a || !b)
    return static_cast<bool>(a) == static_cast<bool>(b);
  if (a->kind != b->kind)
    return false;
  switch (a->kind) {
  case Condition::Kind::BoolLit:
    return a->bool_value == b->bool_value;
  case Condition::Kind::Atom:
    return a->measure == b->measure;
  case Condition::Kind::Compare:
    return a->measure == b->measure && a->op == b->op &&
           a->literal == b->literal;
  case Condition::Kind::Not:
    return conditions_equal(a->lhs, b->lhs);
  case Condition::Kind::And:
  case Condition::Kind::Or:
    return conditions_equal(a->lhs, b->lhs) && conditions_equal(a->rhs, b->rhs);
  }
  return false;
}

bool condition_is_literal_true(const ConditionPtr& c) {
  return c && c->kind == Condition::Kind::BoolLit && c->bool_value;
}

long long duration_seconds(const Duration& d) {
  switch (d.unit) {
  case Duration::Unit::Seconds: return d.magnitude;
  case Duration::Unit::Minutes: return d.magnitude * 60;
  case Duration::Unit::Hours: return d.magnitude * 3600;
  case Duration::Unit::Days: return d.magnitude * 86400;
  }
  return d.magnitude;
}

const char* duration_unit_name(Duration::Unit unit, bool plural) {
  switch (unit) {
  case Duration::Unit::Seconds: return plural ? "seconds" : "second";
  case Duration::Unit::Minutes: return plural ? "minutes" : "minute";
  case Duration::Unit::Hours: return plural ? "hours" : "hour";
  case Duration::Unit::Days: return plural ? "days" : "day";
  }
  return "?";
}

bool operator==(const Duration& a, const Duration& b) {
  return a.magnitude == b.magnitude && a.unit == b.unit;
}

bool responses_equal(const Response& a, const Response& b) {
  if (a.polarity != b.polarity || a.event != b.event)
    return false;
  if (a.deadline.has_value() != b.deadline.has_value())
    return false;
  return !a.deadline || *a.deadline == *b.deadline;
}

bool rules_equal(const Rule& a, const Rule& b) {
  if (a.id != b.id || a.trigger_event != b.trigger_event)
    return false;
  if (!conditions_equal(a.trigger_cond, b.trigger_cond))
    return false;
  if (!responses_equal(a.response, b.response))
    return false;
  if (a.defeaters.size() != b.defeaters.size())
    return false;
  for (size_t i = 0; i < a.defeaters.size(); ++i) {
    const auto& da = a.defeaters[i];
    const auto& db = b.defeaters[i];
    if (!conditions_equal(da.cond, db.cond))
      return false;
    if (da.response.has_value() != db.response.has_value())
      return false;
    if (da.response && !responses_equal(*da.response, *db.response))
      return false;
  }
  return true;
}

bool purposes_equal(const Purpose& a, const Purpose& b) {
  return a.id == b.id && a.exists_event == b.exists_event &&
         conditions_equal(a.cond, b.cond) && a.while_event == b.while_event;
}

bool specs_equal(const SleecSpec& a, const SleecSpec& b) {
  if (a.events.size() != b.events.size() ||
      a.measures.size() != b.measures.size() ||
      a.rules.size() != b.rules.size() ||
      a.purposes.size() != b.purposes.size())
    return false;
  for (size_t i = 0; i < a.events.size(); ++i)
    if (a.events[i].name != b.events[i].name)
      return false;
  for (size_t i = 0; i < a.measures.size(); ++i) {
    const auto& ma = a.measures[i];
    const auto& mb = b.measures[i];
    if (ma.name != mb.name || ma.sort != mb.sort ||
        ma.scale_values != mb.scale_values)
      return false;
  }
  for (size_t i = 0; i < a.rules.size(); ++i)
    if (!rules_equal(a.rules[i], b.rules[i]))
      return false;
  for (size_t i = 0; i < a.purposes.size(); ++i)
    if (!purposes_equal(a.purposes[i], b.purposes[i]))
      return false;
  return true;
}

const Rule* find_rule(const SleecSpec& spec, const std::string& id) {
  for (const auto& r : spec.rules)
    if (r.id == id)
      return &r;
  return nullptr;
}

const Purpose* find_purpose(const SleecSpec& spec, const std::string& id) {
  for (const auto& p : spec.purposes)
    if (p.id == id)
      return &p;
  return nullptr;
}

} // namespace sleec
