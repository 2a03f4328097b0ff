#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sleec/ast.hpp"
#include "sleec/sema.hpp"
#include "sleec/trace.hpp"

namespace sleec {

// One pending demand created by a rule activation. Windows are inclusive
// tick ranges starting at the activation tick. A response with a deadline of
// k ticks gets window [t, t+k] even when that reaches past the end of the
// trace; a response with no deadline is open ended and its stored window end
// is the last tick of the trace it was computed against.
struct Obligation {
  std::string source_rule;
  Polarity polarity = Polarity::Require;
  std::string event;
  int activation_tick = 0;
  int window_begin = 0;
  int window_end = 0;
  bool open_ended = false;
};

bool operator==(const Obligation& a, const Obligation& b);

// Produced by effective_response: either the obligation-defining response or
// a cancellation (defeater with no response matched).
struct EffectiveResponse {
  bool cancelled = false;
  std::optional<Response> response;
  std::optional<int> matched_defeater; // index into rule.defeaters
};

struct ActivationRecord {
  std::string rule;
  int tick = 0;
  std::optional<int> matched_defeater;
  bool cancelled = false;
  std::optional<Obligation> obligation; // absent when cancelled
};

// Evaluates cond under the valuation; null stands for "true". Requires the
// condition to be well typed for the table's vocabulary. Scale values
// compare by declaration position.
bool evaluate_condition(const SymbolTable& table, const ConditionPtr& cond,
                        const Valuation& valuation);

// Defeater resolution: scan defeaters in order, the last one whose condition
// holds wins; with no match the base response applies.
EffectiveResponse effective_response(const SymbolTable& table, const Rule& rule,
                                     const Valuation& valuation);

// One record per (rule, tick) where the trigger event occurs and the trigger
// condition holds, including cancelled activations. Obligation windows use
// the spec's tick scale.
std::vector<ActivationRecord> activations(const SleecSpec& spec,
                                          const Trace& trace);
std::vector<ActivationRecord> activations(const SymbolTable& table,
                                          const TickScale& scale,
                                          const SleecSpec& spec,
                                          const Trace& trace);

enum class VerdictKind { Compliant, Violated, Pending };

const char* verdict_kind_name(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Compliant;
  std::vector<Obligation> violated;
  std::vector<Obligation> pending;
};

// Bounded-trace verdict:
//   violated  - a require window closed inside the trace without its event,
//               or a forbid event occurred inside its window
//   pending   - an undischarged require whose window reaches past the end of
//               the trace (all open-ended requires fall in this bucket)
//   compliant - otherwise
// Violations are stable under trace extension; pending obligations may still
// resolve either way.
Verdict is_compliant(const SleecSpec& spec, const Trace& trace);
Verdict is_compliant(const SymbolTable& table, const TickScale& scale,
                     const SleecSpec& spec, const Trace& trace);

// True iff a and b target the same event with opposite polarities and the
// require window is contained in the forbid window (every way to discharge
// the requirement violates the prohibition). Argument order is irrelevant.
bool obligation_clash(const Obligation& a, const Obligation& b);

} // namespace sleec
