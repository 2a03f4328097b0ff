#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sleec/ast.hpp"
#include "sleec/semantics.hpp"
#include "sleec/trace.hpp"
#include "sleec/translate.hpp"

#include <json.hpp>

namespace sleec {

struct CheckConfig {
  int bound_ticks = 0;        // maximum trace length explored
  int max_events_per_tick = 3;
  bool slicing = true;
  // Per-measure overrides for the numeric abstraction; by default the
  // representatives are derived from the comparison constants in the spec.
  std::map<std::string, std::vector<long long>> numeric_representatives;
};

// Smallest bound that lets the longest deadline window close inside a trace.
// 1 when the spec has no deadlines.
int minimum_bound(const SleecSpec& spec);

// CLI default: minimum_bound + 2 ticks of slack for lead-in and follow-up.
int default_bound(const SleecSpec& spec);

struct BoundTooSmallError : std::runtime_error {
  int minimum = 0;
  BoundTooSmallError(const std::string& what, int minimum_bound)
      : std::runtime_error(what), minimum(minimum_bound) {}
};

struct InstanceTooLargeError : std::runtime_error {
  explicit InstanceTooLargeError(const std::string& what)
      : std::runtime_error(what) {}
};

// Finite per-measure domains used by the bounded search:
//   boolean -> {false, true}
//   scale   -> all declared values
//   numeric -> comparison constants c1<..<ck from the spec, plus c1-1, ck+1
//              and one midpoint per gap wider than one
// A measure that no condition reads collapses to a singleton default.
std::map<std::string, std::vector<Value>> abstract_measure_domains(
    const SleecSpec& spec, const CheckConfig& cfg);

// Cone-of-influence reduction: keeps the transitive closure of rules sharing
// any event (trigger, response or defeater response) with the focus rules,
// and drops vocabulary the kept rules never mention. Purposes are dropped;
// they never constrain rule obligations.
//
// Sound for trigger witnesses. For situational checks it is an
// approximation: a doomed situation caused entirely by rules outside the
// slice is not visible inside it, so cross-slice findings can only come from
// checking those rules' own slices.
SleecSpec slice_relevant_rules(const SleecSpec& spec,
                               const std::set<std::string>& focus);

enum class DiagnosisKind { Vacuous, Situational, PurposeUnsat };

const char* diagnosis_kind_name(DiagnosisKind kind);

struct ClashInfo {
  Obligation require_side;
  Obligation forbid_side;
};

struct Diagnosis {
  DiagnosisKind kind = DiagnosisKind::Vacuous;
  std::vector<std::string> rules; // implicated ids, sorted
  std::optional<Trace> witness;
  std::optional<ClashInfo> clash;
  int bound_used = 0;
  std::vector<TraceEntry> value_context;
};

// Searches for the shortest trace (iterative deepening on length, then
// lexicographic on event sets and valuations) that is compliant with no
// pending obligations and contains a non-cancelled activation of rule_id.
// Returns nullopt when no such trace of length <= bound exists; the rule is
// then vacuous at this bound. Witness valuations are total over the full
// spec vocabulary even when slicing is on.
std::optional<Trace> find_trigger_witness(const SleecSpec& spec,
                                          const std::string& rule_id,
                                          const CheckConfig& cfg);

// Searches for the shortest non-violated prefix in which rule_id activates
// (non-cancelled) and every extension to length bound_ticks is violated
// (obligations merely pending at the horizon do not count as doom). When the
// dead end is explained by an obligation_clash pair whose require window
// closes inside the bound, the diagnosis names that pair and carries the
// clash windows; otherwise it implicates every rule with an undischarged
// obligation when the prefix ends.
std::optional<Diagnosis> find_situational_conflict(const SleecSpec& spec,
                                                   const std::string& rule_id,
                                                   const CheckConfig& cfg);

// Searches for a compliant, fully discharged trace with a tick t where the
// purpose's while-event occurs and a tick t' >= t where its exists-event
// occurs with the purpose condition true. Without a while-event only the
// exists part is needed.
std::optional<Trace> check_purpose(const SleecSpec& spec,
                                   const std::string& purpose_id,
                                   const CheckConfig& cfg);

// Exhaustive oracle: every trace of length exactly cfg.bound_ticks over the
// abstract domains with event sets up to cfg.max_events_per_tick, in the
// same lexicographic order the searches use, each with its is_compliant
// verdict. Guarded by InstanceTooLarge (at most 6 events, bound 5, 3 values
// per measure) because the stream is exponential. Verdicts come from the
// semantics module directly, independent of the search implementation.
void enumerate_all_traces(
    const SleecSpec& spec, const CheckConfig& cfg,
    const std::function<void(const Trace&, const Verdict&)>& yield);

// Full pass: vacuity and situational checks per rule, satisfiability per
// purpose. Symmetric findings are deduplicated (a clash pair is reported
// once, rules sorted by id) and the result is ordered by kind, then rule
// ids. When a traceability map is given, each diagnosis carries the value
// context (principle, proxy) of its implicated generated rules.
std::vector<Diagnosis> check_spec(const SleecSpec& spec, const CheckConfig& cfg,
                                  const TraceabilityMap* map = nullptr);

nlohmann::json diagnosis_to_json(const Diagnosis& d);
nlohmann::json diagnoses_to_json(const std::vector<Diagnosis>& ds);

} // namespace sleec
