#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sleec/ast.hpp"
#include "sleec/diagnostics.hpp"
#include "sleec/sema.hpp"

#include <json.hpp>

namespace sleec {

// Runtime value of one measure at one tick.
struct Value {
  enum class Kind { Bool, Int, Scale };
  Kind kind = Kind::Bool;
  bool bool_value = false;
  long long int_value = 0;
  std::string scale_value; // declared scale value name

  static Value of_bool(bool b);
  static Value of_int(long long i);
  static Value of_scale(std::string name);
};

bool operator==(const Value& a, const Value& b);

// Total assignment: one value per declared measure.
using Valuation = std::map<std::string, Value>;

struct TraceTick {
  std::set<std::string> events;
  Valuation measures;
};

// Finite discrete-time behaviour: tick t covers [t, t+1) on the spec's tick
// scale. Event sets and valuations must stay within the spec's vocabulary;
// trace_from_json enforces that.
struct Trace {
  std::vector<TraceTick> ticks;
  int length() const { return static_cast<int>(ticks.size()); }
};

bool traces_equal(const Trace& a, const Trace& b);

// JSON shape: array of ticks, each {"events": [names], "measures": {name:
// value}} with booleans as JSON bools, numerics as integers and scale values
// by name.
nlohmann::json trace_to_json(const Trace& trace);

// Validates vocabulary, totality and value sorts against the table. Returns
// nullopt and explains the problem via diags on any mismatch.
std::optional<Trace> trace_from_json(const nlohmann::json& j,
                                     const SymbolTable& table,
                                     std::vector<Diagnostic>& diags);

Value default_value(const MeasureInfo& info);

} // namespace sleec
