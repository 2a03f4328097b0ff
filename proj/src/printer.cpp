#include "sleec/printer.hpp"

#include <sstream>

namespace sleec {

namespace {

int precedence(const Condition& c) {
  switch (c.kind) {
  case Condition::Kind::Or: return 1;
  case Condition::Kind::And: return 2;
  case Condition::Kind::Not: return 3;
  default: return 4;
  }
}

std::string print_literal(const Literal& lit) {
  switch (lit.kind) {
  case Literal::Kind::Bool: return lit.bool_value ? "true" : "false";
  case Literal::Kind::Int: return std::to_string(lit.int_value);
  case Literal::Kind::Name: return lit.name;
  }
  return "?";
}

void print_cond(const Condition& c, std::ostream& os, int min_prec) {
  bool parens = precedence(c) < min_prec;
  if (parens)
    os << "(";
  switch (c.kind) {
  case Condition::Kind::BoolLit:
    os << (c.bool_value ? "true" : "false");
    break;
  case Condition::Kind::Atom:
    os << c.measure;
    break;
  case Condition::Kind::Compare:
    os << c.measure << " " << compare_op_text(c.op) << " "
       << print_literal(c.literal);
    break;
  case Condition::Kind::Not:
    os << "not ";
    print_cond(*c.lhs, os, 3);
    break;
  case Condition::Kind::And:
    print_cond(*c.lhs, os, 2);
    os << " and ";
    print_cond(*c.rhs, os, 3);
    break;
  case Condition::Kind::Or:
    print_cond(*c.lhs, os, 1);
    os << " or ";
    print_cond(*c.rhs, os, 2);
    break;
  }
  if (parens)
    os << ")";
}

// Clause positions (after "and", after "unless") print a lone atom or a
// negated atom bare and wrap everything else, comparisons included, so
// clause boundaries stay obvious.
std::string print_clause_cond(const ConditionPtr& cond) {
  std::ostringstream os;
  bool bare = cond->kind == Condition::Kind::Atom ||
              cond->kind == Condition::Kind::BoolLit ||
              (cond->kind == Condition::Kind::Not &&
               cond->lhs->kind == Condition::Kind::Atom);
  if (bare) {
    print_cond(*cond, os, 0);
  } else {
    os << "(";
    print_cond(*cond, os, 0);
    os << ")";
  }
  return os.str();
}

} // namespace

std::string print_condition(const ConditionPtr& cond) {
  if (!cond)
    return "true";
  std::ostringstream os;
  print_cond(*cond, os, 0);
  return os.str();
}

std::string print_duration(const Duration& d) {
  std::ostringstream os;
  os << d.magnitude << " " << duration_unit_name(d.unit, d.magnitude != 1);
  return os.str();
}

std::string print_response(const Response& r) {
  std::ostringstream os;
  if (r.polarity == Polarity::Forbid)
    os << "not ";
  os << r.event;
  if (r.deadline)
    os << " within " << print_duration(*r.deadline);
  return os.str();
}

std::string print_rule(const Rule& rule) {
  std::ostringstream os;
  os << rule.id << " := when " << rule.trigger_event;
  if (rule.trigger_cond)
    os << " and " << print_clause_cond(rule.trigger_cond);
  os << " then " << print_response(rule.response);
  for (const auto& d : rule.defeaters) {
    os << "\n        unless " << print_clause_cond(d.cond);
    if (d.response)
      os << " then " << print_response(*d.response);
  }
  return os.str();
}

std::string print_purpose(const Purpose& p) {
  std::ostringstream os;
  os << p.id << " := exists " << p.exists_event;
  if (p.cond)
    os << " and " << print_clause_cond(p.cond);
  if (p.while_event)
    os << " while " << *p.while_event;
  return os.str();
}

std::string print_sleec(const SleecSpec& spec) {
  std::ostringstream os;
  os << "def_start\n";
  for (const auto& e : spec.events)
    os << "    event " << e.name << "\n";
  for (const auto& m : spec.measures) {
    os << "    measure " << m.name << ": ";
    switch (m.sort) {
    case Sort::Boolean: os << "boolean"; break;
    case Sort::Numeric: os << "numeric"; break;
    case Sort::Scale:
      os << "scale(";
      for (size_t i = 0; i < m.scale_values.size(); ++i) {
        if (i)
          os << ", ";
        os << m.scale_values[i];
      }
      os << ")";
      break;
    }
    os << "\n";
  }
  os << "def_end\n";

  os << "\nrule_start\n";
  for (const auto& r : spec.rules)
    os << "    " << print_rule(r) << "\n";
  os << "rule_end\n";

  if (!spec.purposes.empty()) {
    os << "\npurpose_start\n";
    for (const auto& p : spec.purposes)
      os << "    " << print_purpose(p) << "\n";
    os << "purpose_end\n";
  }
  return os.str();
}

} // namespace sleec
