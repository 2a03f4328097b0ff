#include "sleec/trace.hpp"

namespace sleec {

Value Value::of_bool(bool b) {
  Value v;
  v.kind = Kind::Bool;
  v.bool_value = b;
  return v;
}

Value Value::of_int(long long i) {
  Value v;
  v.kind = Kind::Int;
  v.int_value = i;
  return v;
}

Value Value::of_scale(std::string name) {
  Value v;
  v.kind = Kind::Scale;
  v.scale_value = std::move(name);
  return v;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Value::Kind::Bool: return a.bool_value == b.bool_value;
  case Value::Kind::Int: return a.int_value == b.int_value;
  case Value::Kind::Scale: return a.scale_value == b.scale_value;
  }
  return false;
}

bool traces_equal(const Trace& a, const Trace& b) {
  if (a.ticks.size() != b.ticks.size())
    return false;
  for (size_t i = 0; i < a.ticks.size(); ++i) {
    if (a.ticks[i].events != b.ticks[i].events)
      return false;
    if (a.ticks[i].measures != b.ticks[i].measures)
      return false;
  }
  return true;
}

Value default_value(const MeasureInfo& info) {
  switch (info.sort) {
  case Sort::Boolean: return Value::of_bool(false);
  case Sort::Numeric: return Value::of_int(0);
  case Sort::Scale: return Value::of_scale(info.scale_values.front());
  }
  return Value::of_bool(false);
}

nlohmann::json trace_to_json(const Trace& trace) {
  nlohmann::json ticks = nlohmann::json::array();
  for (const auto& tick : trace.ticks) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : tick.events)
      events.push_back(e);
    nlohmann::json measures = nlohmann::json::object();
    for (const auto& [name, value] : tick.measures) {
      switch (value.kind) {
      case Value::Kind::Bool: measures[name] = value.bool_value; break;
      case Value::Kind::Int: measures[name] = value.int_value; break;
      case Value::Kind::Scale: measures[name] = value.scale_value; break;
      }
    }
    ticks.push_back({{"events", events}, {"measures", measures}});
  }
  return ticks;
}

std::optional<Trace> trace_from_json(const nlohmann::json& j,
                                     const SymbolTable& table,
                                     std::vector<Diagnostic>& diags) {
  auto fail = [&](const std::string& message) {
    diags.push_back({DiagKind::ParseError, {}, message});
    return std::nullopt;
  };

  if (!j.is_array())
    return fail("trace must be a JSON array of ticks");

  Trace trace;
  int index = 0;
  for (const auto& jt : j) {
    std::string at = "tick " + std::to_string(index);
    if (!jt.is_object() || !jt.contains("events") || !jt.contains("measures"))
      return fail(at + ": each tick needs \"events\" and \"measures\"");
    if (!jt["events"].is_array())
      return fail(at + ": \"events\" must be an array");
    if (!jt["measures"].is_object())
      return fail(at + ": \"measures\" must be an object");

    TraceTick tick;
    for (const auto& je : jt["events"]) {
      if (!je.is_string())
        return fail(at + ": event names must be strings");
      std::string name = je.get<std::string>();
      if (!table.has_event(name))
        return fail(at + ": '" + name + "' is not a declared event");
      tick.events.insert(name);
    }
    for (const auto& [name, jv] : jt["measures"].items()) {
      const MeasureInfo* info = table.measure(name);
      if (!info)
        return fail(at + ": '" + name + "' is not a declared measure");
      switch (info->sort) {
      case Sort::Boolean:
        if (!jv.is_boolean())
          return fail(at + ": measure '" + name + "' needs a boolean value");
        tick.measures[name] = Value::of_bool(jv.get<bool>());
        break;
      case Sort::Numeric:
        if (!jv.is_number_integer())
          return fail(at + ": measure '" + name + "' needs an integer value");
        tick.measures[name] = Value::of_int(jv.get<long long>());
        break;
      case Sort::Scale: {
        if (!jv.is_string())
          return fail(at + ": measure '" + name + "' needs a scale value name");
        std::string value = jv.get<std::string>();
        if (!info->scale_index.count(value))
          return fail(at + ": '" + value + "' is not a value of scale '" +
                      name + "'");
        tick.measures[name] = Value::of_scale(value);
        break;
      }
      }
    }
    // Valuations are total: every declared measure needs a value.
    for (const auto& name : table.measure_names)
      if (!tick.measures.count(name))
        return fail(at + ": no value for measure '" + name + "'");
    trace.ticks.push_back(std::move(tick));
    ++index;
  }
  return trace;
}

} // namespace sleec
