#include "sleec/sema.hpp"

#include <cctype>
#include <numeric>
#include <set>

namespace sleec {

namespace {

bool starts_upper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

bool starts_lower(const std::string& s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s[0]));
}

const char* sort_name(Sort s) {
  switch (s) {
  case Sort::Boolean: return "boolean";
  case Sort::Numeric: return "numeric";
  case Sort::Scale: return "scale";
  }
  return "?";
}

void check_event_ref(const std::string& name, SourceLoc loc,
                     const SymbolTable& table, const std::string& context,
                     std::vector<Diagnostic>& out) {
  if (table.has_event(name))
    return;
  std::string message = "'" + name + "' is not a declared event";
  if (table.measure(name))
    message = "measure '" + name + "' used where an event is required";
  out.push_back({DiagKind::UndeclaredIdentifier, loc, message, name, context});
}

} // namespace

std::vector<Diagnostic> check_definitions(
    const std::vector<EventDef>& events,
    const std::vector<MeasureDef>& measures) {
  std::vector<Diagnostic> out;
  std::set<std::string> event_names;
  std::set<std::string> measure_names;

  for (const auto& e : events) {
    if (!starts_upper(e.name))
      out.push_back({DiagKind::ParseError, e.loc,
                     "event name must begin with an uppercase letter",
                     e.name});
    if (!event_names.insert(e.name).second)
      out.push_back({DiagKind::DuplicateDefinition, e.loc,
                     "event '" + e.name + "' declared twice", e.name});
  }
  for (const auto& m : measures) {
    if (!starts_lower(m.name))
      out.push_back({DiagKind::ParseError, m.loc,
                     "measure name must begin with a lowercase letter",
                     m.name});
    if (!measure_names.insert(m.name).second)
      out.push_back({DiagKind::DuplicateDefinition, m.loc,
                     "measure '" + m.name + "' declared twice", m.name});
    if (event_names.count(m.name))
      out.push_back({DiagKind::DuplicateDefinition, m.loc,
                     "'" + m.name + "' is declared as both an event and a measure",
                     m.name});
    if (m.sort == Sort::Scale) {
      std::set<std::string> seen;
      for (const auto& v : m.scale_values)
        if (!seen.insert(v).second)
          out.push_back({DiagKind::DuplicateDefinition, m.loc,
                         "scale value '" + v + "' repeated in measure '" +
                             m.name + "'",
                         v});
    }
  }
  return out;
}

SymbolTable build_symbol_table(const std::vector<EventDef>& events,
                               const std::vector<MeasureDef>& measures) {
  SymbolTable table;
  for (const auto& e : events) {
    if (table.event_index.emplace(e.name, (int)table.event_names.size()).second)
      table.event_names.push_back(e.name);
  }
  for (const auto& m : measures) {
    if (table.measures.count(m.name))
      continue;
    MeasureInfo info;
    info.index = static_cast<int>(table.measure_names.size());
    info.sort = m.sort;
    info.scale_values = m.scale_values;
    for (size_t i = 0; i < m.scale_values.size(); ++i)
      info.scale_index.emplace(m.scale_values[i], static_cast<int>(i));
    table.measures.emplace(m.name, std::move(info));
    table.measure_names.push_back(m.name);
  }
  return table;
}

SymbolTable build_symbol_table(const SleecSpec& spec) {
  return build_symbol_table(spec.events, spec.measures);
}

void check_condition(const ConditionPtr& cond, const SymbolTable& table,
                     const std::string& context, std::vector<Diagnostic>& out) {
  if (!cond)
    return;
  switch (cond->kind) {
  case Condition::Kind::BoolLit:
    return;
  case Condition::Kind::Not:
    check_condition(cond->lhs, table, context, out);
    return;
  case Condition::Kind::And:
  case Condition::Kind::Or:
    check_condition(cond->lhs, table, context, out);
    check_condition(cond->rhs, table, context, out);
    return;
  case Condition::Kind::Atom: {
    const MeasureInfo* info = table.measure(cond->measure);
    if (!info) {
      std::string message = "'" + cond->measure + "' is not a declared measure";
      if (table.has_event(cond->measure))
        message = "event '" + cond->measure + "' used as a measure";
      out.push_back({DiagKind::UndeclaredIdentifier, cond->loc, message,
                     cond->measure, context});
      return;
    }
    if (info->sort != Sort::Boolean)
      out.push_back({DiagKind::SortMismatch, cond->loc,
                     "bare atom requires a boolean measure, '" + cond->measure +
                         "' is " + sort_name(info->sort),
                     cond->measure, context});
    return;
  }
  case Condition::Kind::Compare: {
    const MeasureInfo* info = table.measure(cond->measure);
    if (!info) {
      std::string message = "'" + cond->measure + "' is not a declared measure";
      if (table.has_event(cond->measure))
        message = "event '" + cond->measure + "' used as a measure";
      out.push_back({DiagKind::UndeclaredIdentifier, cond->loc, message,
                     cond->measure, context});
      return;
    }
    bool order_op = cond->op != CompareOp::Eq && cond->op != CompareOp::Ne;
    switch (cond->literal.kind) {
    case Literal::Kind::Bool:
      if (info->sort != Sort::Boolean) {
        out.push_back({DiagKind::SortMismatch, cond->loc,
                       "boolean literal compared against " +
                           std::string(sort_name(info->sort)) + " measure '" +
                           cond->measure + "'",
                       cond->measure, context});
      } else if (order_op) {
        out.push_back({DiagKind::SortMismatch, cond->loc,
                       "order comparison on boolean measure '" + cond->measure +
                           "'",
                       cond->measure, context});
      }
      return;
    case Literal::Kind::Int:
      if (info->sort != Sort::Numeric)
        out.push_back({DiagKind::SortMismatch, cond->loc,
                       "numeric literal compared against " +
                           std::string(sort_name(info->sort)) + " measure '" +
                           cond->measure + "'",
                       cond->measure, context});
      return;
    case Literal::Kind::Name:
      if (info->sort != Sort::Scale) {
        out.push_back({DiagKind::SortMismatch, cond->loc,
                       "scale value compared against " +
                           std::string(sort_name(info->sort)) + " measure '" +
                           cond->measure + "'",
                       cond->measure, context});
      } else if (!info->scale_index.count(cond->literal.name)) {
        out.push_back({DiagKind::SortMismatch, cond->loc,
                       "'" + cond->literal.name + "' is not a value of scale '" +
                           cond->measure + "'",
                       cond->literal.name, context});
      }
      return;
    }
    return;
  }
  }
}

std::vector<Diagnostic> check_names_and_types(const SleecSpec& spec) {
  std::vector<Diagnostic> out = check_definitions(spec.events, spec.measures);
  SymbolTable table = build_symbol_table(spec);

  std::set<std::string> ids;
  auto check_id = [&](const std::string& id, SourceLoc loc) {
    if (!ids.insert(id).second)
      out.push_back({DiagKind::DuplicateDefinition, loc,
                     "rule or purpose id '" + id + "' declared twice", id});
  };

  for (const auto& rule : spec.rules) {
    check_id(rule.id, rule.loc);
    check_event_ref(rule.trigger_event, rule.loc, table, rule.id, out);
    check_condition(rule.trigger_cond, table, rule.id, out);
    check_event_ref(rule.response.event, rule.response.loc, table, rule.id,
                    out);
    for (const auto& d : rule.defeaters) {
      check_condition(d.cond, table, rule.id, out);
      if (d.response)
        check_event_ref(d.response->event, d.response->loc, table, rule.id,
                        out);
    }
  }
  for (const auto& p : spec.purposes) {
    check_id(p.id, p.loc);
    check_event_ref(p.exists_event, p.loc, table, p.id, out);
    check_condition(p.cond, table, p.id, out);
    if (p.while_event)
      check_event_ref(*p.while_event, p.loc, table, p.id, out);
  }
  return out;
}

int TickScale::ticks_for(const Duration& d) const {
  long long secs = duration_seconds(d);
  auto it = ticks_by_seconds.find(secs);
  if (it != ticks_by_seconds.end())
    return it->second;
  return static_cast<int>(secs / tick_seconds);
}

TickScale normalize_durations(const SleecSpec& spec) {
  std::vector<long long> seconds;
  auto collect = [&](const std::optional<Duration>& d) {
    if (d)
      seconds.push_back(duration_seconds(*d));
  };
  for (const auto& rule : spec.rules) {
    collect(rule.response.deadline);
    for (const auto& d : rule.defeaters)
      if (d.response)
        collect(d.response->deadline);
  }

  TickScale scale;
  if (seconds.empty())
    return scale; // one abstract unit per tick, no deadline table

  scale.has_durations = true;
  long long g = 0;
  for (long long s : seconds)
    g = std::gcd(g, s);
  scale.tick_seconds = g;
  for (long long s : seconds) {
    int ticks = static_cast<int>(s / g);
    scale.ticks_by_seconds[s] = ticks;
    scale.max_deadline_ticks = std::max(scale.max_deadline_ticks, ticks);
  }
  return scale;
}

} // namespace sleec
