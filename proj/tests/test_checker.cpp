#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sleec/checker.hpp"
#include "sleec/goal_parser.hpp"
#include "sleec/goal_validate.hpp"
#include "sleec/parser.hpp"
#include "sleec/sema.hpp"
#include "sleec/semantics.hpp"
#include "sleec/translate.hpp"

using namespace sleec;

namespace {

SleecSpec parse_spec(const std::string& text) {
  std::vector<Diagnostic> diags;
  auto spec = parse_sleec(text, diags);
  REQUIRE(spec.has_value());
  REQUIRE(diags.empty());
  REQUIRE(check_names_and_types(*spec).empty());
  return *spec;
}

SleecSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

SleecSpec translated_fixture(const char* name) {
  std::ifstream in(std::string(FIXTURE_DIR) + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<Diagnostic> diags;
  auto model = parse_goal_model(buf.str(), diags);
  REQUIRE(model.has_value());
  REQUIRE(diags.empty());
  REQUIRE(validate_goal_model(*model).empty());
  return translate_model(*model).spec;
}

TraceTick tick(std::set<std::string> events, bool track_vitals,
               const char* risk, bool consent) {
  TraceTick t;
  t.events = std::move(events);
  t.measures["trackVitals"] = Value::of_bool(track_vitals);
  t.measures["riskLevel"] = Value::of_scale(risk);
  t.measures["userConsent"] = Value::of_bool(consent);
  return t;
}

const char* kSliceSpec = R"(def_start
  event EvA
  event EvB
  event EvC
  event EvX
  event EvP
  event EvQ
  measure mKeep: boolean
  measure mDrop: boolean
def_end

rule_start
  rA := when EvA then EvB
  rB := when EvB and mKeep then EvC
  rC := when EvP and mDrop then EvQ
  rD := when EvX then EvA
rule_end

purpose_start
  pA := exists EvA
purpose_end
)";

} // namespace

TEST_CASE("numeric abstraction brackets the comparison constants") {
  SleecSpec spec = parse_spec(R"(def_start
  event EvA
  event EvB
  measure load: numeric
  measure idle: numeric
  measure flag: boolean
  measure band: scale(low, mid, high)
def_end

rule_start
  rA := when EvA and (load > 3) then EvB
  rB := when EvA and ((load < 7) and flag) then EvB
  rC := when EvA and (band = mid) then EvB
rule_end
)");
  CheckConfig cfg;
  cfg.bound_ticks = 2;
  auto domains = abstract_measure_domains(spec, cfg);

  // constants 3 and 7: below, each constant, midpoint of the wide gap, above
  std::vector<long long> load;
  for (const auto& v : domains.at("load"))
    load.push_back(v.int_value);
  CHECK(load == std::vector<long long>{2, 3, 5, 7, 8});

  CHECK(domains.at("idle").size() == 1); // never read

  const auto& flag = domains.at("flag");
  REQUIRE(flag.size() == 2);
  CHECK_FALSE(flag[0].bool_value);
  CHECK(flag[1].bool_value);

  const auto& band = domains.at("band");
  REQUIRE(band.size() == 3);
  CHECK(band[0].scale_value == "low");
  CHECK(band[2].scale_value == "high");

  SUBCASE("adjacent constants leave no room for a midpoint") {
    SleecSpec tight = parse_spec(R"(def_start
  event EvA
  event EvB
  measure load: numeric
def_end

rule_start
  rA := when EvA and ((load > 3) and (load < 4)) then EvB
rule_end
)");
    auto d = abstract_measure_domains(tight, cfg);
    std::vector<long long> got;
    for (const auto& v : d.at("load"))
      got.push_back(v.int_value);
    CHECK(got == std::vector<long long>{2, 3, 4, 5});
  }

  SUBCASE("explicit representatives win and are deduplicated") {
    CheckConfig over = cfg;
    over.numeric_representatives["load"] = {3, 1, 2, 2};
    auto d = abstract_measure_domains(spec, over);
    std::vector<long long> got;
    for (const auto& v : d.at("load"))
      got.push_back(v.int_value);
    CHECK(got == std::vector<long long>{1, 2, 3});
  }
}

TEST_CASE("bound heuristics follow the longest deadline") {
  SleecSpec bsn = load_spec(std::string(FIXTURE_DIR) + "/bsn_fixed.sleec");
  CHECK(minimum_bound(bsn) == 6); // 5 minute deadline on 1 minute ticks
  CHECK(default_bound(bsn) == 8);

  SleecSpec no_deadline = parse_spec(R"(def_start
  event EvA
  event EvB
def_end

rule_start
  rA := when EvA then EvB
rule_end
)");
  CHECK(minimum_bound(no_deadline) == 1);
  CHECK(default_bound(no_deadline) == 3);

  CheckConfig cfg;
  cfg.bound_ticks = 5;
  bool thrown = false;
  try {
    find_trigger_witness(bsn, "r1", cfg);
  } catch (const BoundTooSmallError& e) {
    thrown = true;
    CHECK(e.minimum == 6);
  }
  CHECK(thrown);
}

TEST_CASE("slicing keeps the transitive event-sharing closure") {
  SleecSpec spec = parse_spec(kSliceSpec);
  SleecSpec sliced = slice_relevant_rules(spec, {"rA"});

  std::set<std::string> rules;
  for (const auto& r : sliced.rules)
    rules.insert(r.id);
  CHECK(rules == std::set<std::string>{"rA", "rB", "rD"});

  std::set<std::string> events;
  for (const auto& e : sliced.events)
    events.insert(e.name);
  CHECK(events == std::set<std::string>{"EvA", "EvB", "EvC", "EvX"});

  std::set<std::string> measures;
  for (const auto& m : sliced.measures)
    measures.insert(m.name);
  CHECK(measures == std::set<std::string>{"mKeep"});

  CHECK(sliced.purposes.empty());

  SUBCASE("a disconnected rule keeps only itself") {
    SleecSpec only_c = slice_relevant_rules(spec, {"rC"});
    REQUIRE(only_c.rules.size() == 1);
    CHECK(only_c.rules[0].id == "rC");
  }
}

TEST_CASE("trigger witnesses are the shortest lexicographic traces") {
  SleecSpec bsn = load_spec(std::string(FIXTURE_DIR) + "/bsn_fixed.sleec");
  CheckConfig cfg;
  cfg.bound_ticks = 6;

  auto w1 = find_trigger_witness(bsn, "r1", cfg);
  REQUIRE(w1.has_value());
  Trace expect1;
  expect1.ticks.push_back(
      tick({"StopTracking", "UserAsksStopTracking"}, true, "low", false));
  CHECK(traces_equal(*w1, expect1));

  auto w2 = find_trigger_witness(bsn, "r2", cfg);
  REQUIRE(w2.has_value());
  Trace expect2;
  expect2.ticks.push_back(
      tick({"AdaptationExecuted", "ExplainAdaptation"}, false, "low", false));
  CHECK(traces_equal(*w2, expect2));

  // a forbid rule needs no discharging event, one trigger suffices
  auto w3 = find_trigger_witness(bsn, "r3", cfg);
  REQUIRE(w3.has_value());
  Trace expect3;
  expect3.ticks.push_back(tick({"UserRequestsPrivacy"}, false, "low", false));
  CHECK(traces_equal(*w3, expect3));
}

TEST_CASE("rules that cannot fire cleanly are vacuous") {
  SleecSpec spec = parse_spec(R"(def_start
  event EvA
  event EvB
  measure mA: boolean
def_end

rule_start
  rV := when EvA and (mA and (not mA)) then EvB
  rW := when EvA then EvB
        unless true
  rOk := when EvA then EvB
rule_end
)");
  CheckConfig cfg;
  cfg.bound_ticks = 3;

  CHECK_FALSE(find_trigger_witness(spec, "rV", cfg).has_value());
  CHECK_FALSE(find_trigger_witness(spec, "rW", cfg).has_value());
  CHECK(find_trigger_witness(spec, "rOk", cfg).has_value());

  auto diagnoses = check_spec(spec, cfg);
  REQUIRE(diagnoses.size() == 2);
  CHECK(diagnoses[0].kind == DiagnosisKind::Vacuous);
  CHECK(diagnoses[0].rules == std::vector<std::string>{"rV"});
  CHECK_FALSE(diagnoses[0].witness.has_value());
  CHECK(diagnoses[1].kind == DiagnosisKind::Vacuous);
  CHECK(diagnoses[1].rules == std::vector<std::string>{"rW"});
}

TEST_CASE("the fixed sensor network has exactly one conflict") {
  SleecSpec bsn = load_spec(std::string(FIXTURE_DIR) + "/bsn_fixed.sleec");
  CheckConfig cfg;
  cfg.bound_ticks = 6;

  auto diagnoses = check_spec(bsn, cfg);
  REQUIRE(diagnoses.size() == 1);
  const Diagnosis& d = diagnoses[0];
  CHECK(d.kind == DiagnosisKind::Situational);
  CHECK(d.rules == std::vector<std::string>{"r1", "r3"});
  CHECK(d.bound_used == 6);

  REQUIRE(d.witness.has_value());
  Trace expect;
  expect.ticks.push_back(tick({"UserAsksStopTracking", "UserRequestsPrivacy"},
                              true, "high", false));
  CHECK(traces_equal(*d.witness, expect));

  REQUIRE(d.clash.has_value());
  CHECK(d.clash->require_side.event == "CallCaregiver");
  CHECK(d.clash->require_side.polarity == Polarity::Require);
  CHECK(d.clash->require_side.window_begin == 0);
  CHECK(d.clash->require_side.window_end == 5);
  CHECK_FALSE(d.clash->require_side.open_ended);
  CHECK(d.clash->forbid_side.polarity == Polarity::Forbid);
  CHECK(d.clash->forbid_side.window_begin == 0);
  CHECK(d.clash->forbid_side.window_end == 5);
  CHECK_FALSE(d.clash->forbid_side.open_ended);

  // the explanation rule fires within the same situation, r2 stays clean
  CHECK_FALSE(find_situational_conflict(bsn, "r2", cfg).has_value());
}

TEST_CASE("purpose satisfiability distinguishes live from dead purposes") {
  SleecSpec translated = translated_fixture("/bsn.gsl");
  CheckConfig cfg;
  cfg.bound_ticks = default_bound(translated);

  auto witness = check_purpose(translated, "P3", cfg);
  REQUIRE(witness.has_value());
  SymbolTable table = build_symbol_table(translated);
  TickScale scale = normalize_durations(translated);
  Verdict v = is_compliant(table, scale, translated, *witness);
  CHECK(v.kind == VerdictKind::Compliant);
  CHECK(v.pending.empty());

  SleecSpec dead = parse_spec(R"(def_start
  event EvA
  measure mA: boolean
def_end

purpose_start
  pU := exists EvA and (mA and (not mA))
  pS := exists EvA
purpose_end
)");
  CheckConfig small;
  small.bound_ticks = 2;
  CHECK_FALSE(check_purpose(dead, "pU", small).has_value());
  CHECK(check_purpose(dead, "pS", small).has_value());

  auto diagnoses = check_spec(dead, small);
  REQUIRE(diagnoses.size() == 1);
  CHECK(diagnoses[0].kind == DiagnosisKind::PurposeUnsat);
  CHECK(diagnoses[0].rules == std::vector<std::string>{"pU"});
}

TEST_CASE("exhaustive enumeration matches counts done by hand") {
  SleecSpec spec = parse_spec(R"(def_start
  event E
  event F
def_end

rule_start
  r := when E then F within 1 seconds
rule_end
)");
  CheckConfig cfg;
  cfg.bound_ticks = 2;
  cfg.max_events_per_tick = 2;

  // per tick: {}, {E}, {F}, {E,F}; two ticks make 16 traces
  int total = 0, violated = 0, pending = 0, compliant = 0;
  enumerate_all_traces(spec, cfg, [&](const Trace& t, const Verdict& v) {
    CHECK(t.length() == 2);
    ++total;
    switch (v.kind) {
    case VerdictKind::Violated: ++violated; break;
    case VerdictKind::Pending: ++pending; break;
    case VerdictKind::Compliant: ++compliant; break;
    }
  });
  CHECK(total == 16);
  // E at tick 0 with no F at 0 or 1, or E alone at tick 1... by hand:
  // violated needs E at 0 and no F in {0,1}: {E}{} and {E}{E}
  CHECK(violated == 2);
  // pending needs E at 1 (window still open) and no F at 1, not yet violated
  CHECK(pending == 3);
  CHECK(compliant == 11);
}

TEST_CASE("enumeration refuses instances it cannot exhaust") {
  auto noop = [](const Trace&, const Verdict&) {};

  SleecSpec seven_events = parse_spec(R"(def_start
  event E1
  event E2
  event E3
  event E4
  event E5
  event E6
  event E7
def_end

rule_start
  r := when E1 then E2
rule_end
)");
  CheckConfig cfg;
  cfg.bound_ticks = 2;
  CHECK_THROWS_AS(enumerate_all_traces(seven_events, cfg, noop),
                  InstanceTooLargeError);

  SleecSpec tiny = parse_spec(R"(def_start
  event E
  event F
def_end

rule_start
  r := when E then F
rule_end
)");
  CheckConfig deep;
  deep.bound_ticks = 6;
  CHECK_THROWS_AS(enumerate_all_traces(tiny, deep, noop),
                  InstanceTooLargeError);

  SleecSpec numeric = parse_spec(R"(def_start
  event E
  event F
  measure load: numeric
def_end

rule_start
  r := when E and (load > 3) then F
rule_end
)");
  CheckConfig wide;
  wide.bound_ticks = 2;
  wide.numeric_representatives["load"] = {1, 2, 3, 4, 5};
  CHECK_THROWS_AS(enumerate_all_traces(numeric, wide, noop),
                  InstanceTooLargeError);
}

TEST_CASE("the goal model conflict disappears after negotiation") {
  std::ifstream in(std::string(FIXTURE_DIR) + "/bsn.gsl", std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<Diagnostic> diags;
  auto model = parse_goal_model(buf.str(), diags);
  REQUIRE(model.has_value());
  TranslationResult result = translate_model(*model);

  CheckConfig cfg;
  cfg.bound_ticks = default_bound(result.spec);
  auto diagnoses = check_spec(result.spec, cfg, &result.map);
  REQUIRE(diagnoses.size() == 1);
  CHECK(diagnoses[0].kind == DiagnosisKind::Situational);
  CHECK(diagnoses[0].rules ==
        std::vector<std::string>{"RuleT6_2", "RuleT6_Obstacle"});

  // provenance rides along so a reader sees what the clashing rules encode
  REQUIRE(diagnoses[0].value_context.size() == 2);
  CHECK(diagnoses[0].value_context[0].generated == "RuleT6_2");
  CHECK(diagnoses[0].value_context[0].source ==
        "ApplyConsentPartialTrackingProtocol");
  CHECK(diagnoses[0].value_context[1].generated == "RuleT6_Obstacle");

  SleecSpec negotiated = translated_fixture("/bsn_negotiated.gsl");
  CheckConfig cfg2;
  cfg2.bound_ticks = default_bound(negotiated);
  CHECK(check_spec(negotiated, cfg2).empty());
}

TEST_CASE("slicing never changes what the full pass reports") {
  SleecSpec bsn = load_spec(std::string(FIXTURE_DIR) + "/bsn_fixed.sleec");
  CheckConfig on;
  on.bound_ticks = 6;
  on.slicing = true;
  CheckConfig off = on;
  off.slicing = false;

  auto a = check_spec(bsn, on);
  auto b = check_spec(bsn, off);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].kind == b[i].kind);
    CHECK(a[i].rules == b[i].rules);
  }
}
