#include "sleec/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sleec {

bool operator==(const Obligation& a, const Obligation& b) {
  return a.source_rule == b.source_rule && a.polarity == b.polarity &&
         a.event == b.event && a.activation_tick == b.activation_tick &&
         a.window_begin == b.window_begin && a.window_end == b.window_end &&
         a.open_ended == b.open_ended;
}

namespace {

// Compares a measure's runtime value against the literal. Scale values
// compare by declaration position.
bool compare_values(const MeasureInfo& info, const Value& value,
                    CompareOp op, const Literal& lit) {
  long long lhs = 0;
  long long rhs = 0;
  switch (lit.kind) {
  case Literal::Kind::Bool:
    assert(value.kind == Value::Kind::Bool);
    lhs = value.bool_value ? 1 : 0;
    rhs = lit.bool_value ? 1 : 0;
    break;
  case Literal::Kind::Int:
    assert(value.kind == Value::Kind::Int);
    lhs = value.int_value;
    rhs = lit.int_value;
    break;
  case Literal::Kind::Name: {
    assert(value.kind == Value::Kind::Scale);
    auto lit_pos = info.scale_index.find(lit.name);
    auto val_pos = info.scale_index.find(value.scale_value);
    assert(lit_pos != info.scale_index.end() &&
           val_pos != info.scale_index.end());
    lhs = val_pos->second;
    rhs = lit_pos->second;
    break;
  }
  }
  switch (op) {
  case CompareOp::Eq: return lhs == rhs;
  case CompareOp::Ne: return lhs != rhs;
  case CompareOp::Lt: return lhs < rhs;
  case CompareOp::Le: return lhs <= rhs;
  case CompareOp::Gt: return lhs > rhs;
  case CompareOp::Ge: return lhs >= rhs;
  }
  return false;
}

const Value& measure_value(const Valuation& valuation,
                           const std::string& name) {
  auto it = valuation.find(name);
  if (it == valuation.end())
    throw std::logic_error("valuation has no value for measure '" + name + "'");
  return it->second;
}

} // namespace

bool evaluate_condition(const SymbolTable& table, const ConditionPtr& cond,
                        const Valuation& valuation) {
  if (!cond)
    return true;
  switch (cond->kind) {
  case Condition::Kind::BoolLit:
    return cond->bool_value;
  case Condition::Kind::Atom: {
    const Value& v = measure_value(valuation, cond->measure);
    assert(v.kind == Value::Kind::Bool);
    return v.bool_value;
  }
  case Condition::Kind::Compare: {
    const MeasureInfo* info = table.measure(cond->measure);
    assert(info);
    return compare_values(*info, measure_value(valuation, cond->measure),
                          cond->op, cond->literal);
  }
  case Condition::Kind::Not:
    return !evaluate_condition(table, cond->lhs, valuation);
  case Condition::Kind::And:
    return evaluate_condition(table, cond->lhs, valuation) &&
           evaluate_condition(table, cond->rhs, valuation);
  case Condition::Kind::Or:
    return evaluate_condition(table, cond->lhs, valuation) ||
           evaluate_condition(table, cond->rhs, valuation);
  }
  return false;
}

EffectiveResponse effective_response(const SymbolTable& table, const Rule& rule,
                                     const Valuation& valuation) {
  EffectiveResponse result;
  // Last matching defeater wins; scanning backward finds it directly.
  for (int i = static_cast<int>(rule.defeaters.size()) - 1; i >= 0; --i) {
    if (evaluate_condition(table, rule.defeaters[i].cond, valuation)) {
      result.matched_defeater = i;
      if (rule.defeaters[i].response)
        result.response = rule.defeaters[i].response;
      else
        result.cancelled = true;
      return result;
    }
  }
  result.response = rule.response;
  return result;
}

std::vector<ActivationRecord> activations(const SymbolTable& table,
                                          const TickScale& scale,
                                          const SleecSpec& spec,
                                          const Trace& trace) {
  std::vector<ActivationRecord> records;
  const int length = trace.length();
  for (int t = 0; t < length; ++t) {
    const TraceTick& tick = trace.ticks[t];
    for (const auto& rule : spec.rules) {
      if (!tick.events.count(rule.trigger_event))
        continue;
      if (!evaluate_condition(table, rule.trigger_cond, tick.measures))
        continue;

      ActivationRecord record;
      record.rule = rule.id;
      record.tick = t;
      EffectiveResponse eff = effective_response(table, rule, tick.measures);
      record.matched_defeater = eff.matched_defeater;
      record.cancelled = eff.cancelled;
      if (!eff.cancelled) {
        const Response& response = *eff.response;
        Obligation ob;
        ob.source_rule = rule.id;
        ob.polarity = response.polarity;
        ob.event = response.event;
        ob.activation_tick = t;
        ob.window_begin = t;
        if (response.deadline) {
          ob.window_end = t + scale.ticks_for(*response.deadline);
          ob.open_ended = false;
        } else {
          ob.window_end = length - 1;
          ob.open_ended = true;
        }
        record.obligation = ob;
      }
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::vector<ActivationRecord> activations(const SleecSpec& spec,
                                          const Trace& trace) {
  SymbolTable table = build_symbol_table(spec);
  TickScale scale = normalize_durations(spec);
  return activations(table, scale, spec, trace);
}

const char* verdict_kind_name(VerdictKind kind) {
  switch (kind) {
  case VerdictKind::Compliant: return "compliant";
  case VerdictKind::Violated: return "violated";
  case VerdictKind::Pending: return "pending";
  }
  return "?";
}

Verdict is_compliant(const SymbolTable& table, const TickScale& scale,
                     const SleecSpec& spec, const Trace& trace) {
  Verdict verdict;
  const int length = trace.length();

  auto occurs_in = [&](const std::string& event, int from, int to) {
    for (int t = from; t <= to && t < length; ++t)
      if (t >= 0 && trace.ticks[t].events.count(event))
        return true;
    return false;
  };

  for (const auto& record : activations(table, scale, spec, trace)) {
    if (!record.obligation)
      continue;
    const Obligation& ob = *record.obligation;
    int checked_end = std::min(ob.window_end, length - 1);
    bool occurred = occurs_in(ob.event, ob.window_begin, checked_end);

    if (ob.polarity == Polarity::Forbid) {
      if (occurred)
        verdict.violated.push_back(ob);
      continue;
    }
    // Require: discharged by an occurrence inside the window; violated only
    // when a closed window elapsed without one; still pending when the
    // window reaches past the end of the trace.
    if (occurred)
      continue;
    if (!ob.open_ended && ob.window_end <= length - 1)
      verdict.violated.push_back(ob);
    else
      verdict.pending.push_back(ob);
  }

  if (!verdict.violated.empty())
    verdict.kind = VerdictKind::Violated;
  else if (!verdict.pending.empty())
    verdict.kind = VerdictKind::Pending;
  else
    verdict.kind = VerdictKind::Compliant;
  return verdict;
}

Verdict is_compliant(const SleecSpec& spec, const Trace& trace) {
  SymbolTable table = build_symbol_table(spec);
  TickScale scale = normalize_durations(spec);
  return is_compliant(table, scale, spec, trace);
}

bool obligation_clash(const Obligation& a, const Obligation& b) {
  if (a.polarity == b.polarity || a.event != b.event)
    return false;
  const Obligation& req = a.polarity == Polarity::Require ? a : b;
  const Obligation& forb = a.polarity == Polarity::Require ? b : a;
  // Open-ended windows run to the end of whatever trace is in play, so an
  // open forbid window contains any require window starting no earlier.
  if (req.window_begin < forb.window_begin)
    return false;
  if (forb.open_ended)
    return true;
  if (req.open_ended)
    return false;
  return req.window_end <= forb.window_end;
}

} // namespace sleec
