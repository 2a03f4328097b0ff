#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sleec/diagnostics.hpp"

namespace sleec {

enum class Sort { Boolean, Numeric, Scale };

struct EventDef {
  std::string name;
  SourceLoc loc;
};

struct MeasureDef {
  std::string name;
  Sort sort = Sort::Boolean;
  std::vector<std::string> scale_values; // ordered low to high, Scale only
  SourceLoc loc;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* compare_op_text(CompareOp op);

// Right-hand side of a comparison. Scale values arrive from the parser as
// plain names and are resolved against the measure's declaration during
// semantic checking.
struct Literal {
  enum class Kind { Bool, Int, Name };
  Kind kind = Kind::Bool;
  bool bool_value = false;
  long long int_value = 0;
  std::string name;

  static Literal of_bool(bool b);
  static Literal of_int(long long i);
  static Literal of_name(std::string n);
};

bool operator==(const Literal& a, const Literal& b);

struct Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

// Immutable expression tree. A bare measure atom is kept distinct from the
// equivalent "m = true" comparison so the printer can reproduce the surface
// form; evaluation treats them identically.
struct Condition {
  enum class Kind { BoolLit, Atom, Compare, Not, And, Or };
  Kind kind = Kind::BoolLit;
  bool bool_value = false;     // BoolLit
  std::string measure;         // Atom, Compare
  CompareOp op = CompareOp::Eq;
  Literal literal;             // Compare
  ConditionPtr lhs;            // Not (operand), And/Or (left)
  ConditionPtr rhs;            // And/Or (right)
  SourceLoc loc;
};

ConditionPtr cond_bool(bool value);
ConditionPtr cond_atom(std::string measure, SourceLoc loc = {});
ConditionPtr cond_compare(std::string measure, CompareOp op, Literal lit,
                          SourceLoc loc = {});
ConditionPtr cond_not(ConditionPtr inner, SourceLoc loc = {});
ConditionPtr cond_and(ConditionPtr a, ConditionPtr b, SourceLoc loc = {});
ConditionPtr cond_or(ConditionPtr a, ConditionPtr b, SourceLoc loc = {});

// Structural equality, ignoring source locations. Null means "true" where a
// condition is optional; null and cond_bool(true) compare unequal because
// they print differently.
bool conditions_equal(const ConditionPtr& a, const ConditionPtr& b);
bool condition_is_literal_true(const ConditionPtr& c);

struct Duration {
  enum class Unit { Seconds, Minutes, Hours, Days };
  long long magnitude = 0; // always >= 1 after parsing
  Unit unit = Unit::Seconds;
};

long long duration_seconds(const Duration& d);
const char* duration_unit_name(Duration::Unit unit, bool plural);
bool operator==(const Duration& a, const Duration& b);

enum class Polarity { Require, Forbid };

struct Response {
  Polarity polarity = Polarity::Require;
  std::string event;
  std::optional<Duration> deadline;
  SourceLoc loc;
};

bool responses_equal(const Response& a, const Response& b);

// "unless (cond) then response"; a defeater with no response cancels the
// rule's obligation when it matches.
struct Defeater {
  ConditionPtr cond; // never null
  std::optional<Response> response;
  SourceLoc loc;
};

struct Rule {
  std::string id;
  std::string trigger_event;
  ConditionPtr trigger_cond; // null when the trigger has no condition
  Response response;
  std::vector<Defeater> defeaters;
  SourceLoc loc;
};

struct Purpose {
  std::string id;
  std::string exists_event;
  ConditionPtr cond;                      // null when absent
  std::optional<std::string> while_event; // context event
  SourceLoc loc;
};

struct SleecSpec {
  std::vector<EventDef> events;
  std::vector<MeasureDef> measures;
  std::vector<Rule> rules;
  std::vector<Purpose> purposes;
};

bool rules_equal(const Rule& a, const Rule& b);
bool purposes_equal(const Purpose& a, const Purpose& b);
bool specs_equal(const SleecSpec& a, const SleecSpec& b);

const Rule* find_rule(const SleecSpec& spec, const std::string& id);
const Purpose* find_purpose(const SleecSpec& spec, const std::string& id);

} // namespace sleec
