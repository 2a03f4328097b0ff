#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "sleec/parser.hpp"
#include "sleec/sema.hpp"
#include "sleec/semantics.hpp"

using namespace sleec;

namespace {

SleecSpec parse_ok(const std::string& text) {
  std::vector<Diagnostic> diags;
  auto spec = parse_sleec(text, diags);
  REQUIRE(spec.has_value());
  REQUIRE(check_names_and_types(*spec).empty());
  return *spec;
}

TraceTick tick(std::initializer_list<std::string> events,
               const Valuation& measures) {
  TraceTick t;
  for (const auto& e : events)
    t.events.insert(e);
  t.measures = measures;
  return t;
}

const char* kWindowSpec = R"(
def_start
    event Ask
    event Answer
    measure ready: boolean
def_end
rule_start
    r1 := when Ask and ready then Answer within 2 minutes
    r2 := when Ask then not Answer within 1 minute
rule_end
)";

} // namespace

TEST_CASE("activation needs the trigger event and a true condition") {
  SleecSpec spec = parse_ok(kWindowSpec);
  Valuation on{{"ready", Value::of_bool(true)}};
  Valuation off{{"ready", Value::of_bool(false)}};

  Trace both;
  both.ticks.push_back(tick({"Ask"}, on));
  auto acts = activations(spec, both);
  REQUIRE(acts.size() == 2); // r1 and r2
  CHECK(acts[0].rule == "r1");
  REQUIRE(acts[0].obligation.has_value());
  CHECK(acts[0].obligation->window_begin == 0);
  CHECK(acts[0].obligation->window_end == 2); // 2 minutes on a 1 minute tick
  CHECK_FALSE(acts[0].obligation->open_ended);
  CHECK(acts[1].rule == "r2");
  CHECK(acts[1].obligation->polarity == Polarity::Forbid);

  Trace cond_false;
  cond_false.ticks.push_back(tick({"Ask"}, off));
  auto acts2 = activations(spec, cond_false);
  REQUIRE(acts2.size() == 1); // only the unconditional r2
  CHECK(acts2[0].rule == "r2");

  Trace no_event;
  no_event.ticks.push_back(tick({"Answer"}, on));
  CHECK(activations(spec, no_event).empty());
}

TEST_CASE("open-ended responses span the rest of the trace") {
  SleecSpec spec = parse_ok(R"(
def_start
    event Ask
    event Answer
def_end
rule_start
    r1 := when Ask then Answer
rule_end
)");
  Trace trace;
  trace.ticks.push_back(tick({"Ask"}, {}));
  trace.ticks.push_back(tick({}, {}));
  trace.ticks.push_back(tick({}, {}));
  auto acts = activations(spec, trace);
  REQUIRE(acts.size() == 1);
  CHECK(acts[0].obligation->open_ended);
  CHECK(acts[0].obligation->window_end == 2);

  Verdict v = is_compliant(spec, trace);
  CHECK(v.kind == VerdictKind::Pending); // undischarged but never expired
  REQUIRE(v.pending.size() == 1);
  CHECK(v.pending[0].source_rule == "r1");
}

TEST_CASE("verdicts: discharge, expiry, prohibition, pending") {
  SleecSpec spec = parse_ok(kWindowSpec);
  Valuation on{{"ready", Value::of_bool(true)}};
  Valuation off{{"ready", Value::of_bool(false)}};

  SUBCASE("discharge on the last window tick") {
    Trace t;
    t.ticks.push_back(tick({"Ask"}, on));
    t.ticks.push_back(tick({}, on));
    t.ticks.push_back(tick({"Answer"}, on));
    // r2 forbids Answer in [0,1]; the occurrence at 2 is outside it
    CHECK(is_compliant(spec, t).kind == VerdictKind::Compliant);
  }
  SUBCASE("expiry inside the trace is a violation") {
    Trace t;
    t.ticks.push_back(tick({"Ask"}, on));
    t.ticks.push_back(tick({}, on));
    t.ticks.push_back(tick({}, on));
    Verdict v = is_compliant(spec, t);
    CHECK(v.kind == VerdictKind::Violated);
    REQUIRE(v.violated.size() == 1);
    CHECK(v.violated[0].source_rule == "r1");
    CHECK(v.violated[0].window_end == 2);
  }
  SUBCASE("forbidden occurrence is a violation") {
    Trace t;
    t.ticks.push_back(tick({"Ask"}, off)); // r1 inactive, r2 active
    t.ticks.push_back(tick({"Answer"}, off));
    Verdict v = is_compliant(spec, t);
    CHECK(v.kind == VerdictKind::Violated);
    REQUIRE(v.violated.size() == 1);
    CHECK(v.violated[0].source_rule == "r2");
  }
  SUBCASE("window reaching past the end leaves the verdict pending") {
    Trace t;
    t.ticks.push_back(tick({"Ask"}, on));
    t.ticks.push_back(tick({}, on));
    Verdict v = is_compliant(spec, t);
    CHECK(v.kind == VerdictKind::Pending);
    REQUIRE(v.pending.size() == 1);
    CHECK(v.pending[0].source_rule == "r1"); // [0,2] still open at length 2
  }
}

TEST_CASE("defeater chains resolve to the last matching clause") {
  SleecSpec spec = parse_ok(R"(
def_start
    event Ask
    event Base
    event First
    event Third
    measure mA: boolean
    measure mB: boolean
    measure mC: boolean
def_end
rule_start
    r1 := when Ask then Base
        unless mA then First
        unless mB
        unless mC then Third within 1 minute
rule_end
)");
  const Rule& rule = spec.rules[0];
  SymbolTable table = build_symbol_table(spec);
  auto val = [](bool a, bool b, bool c) {
    return Valuation{{"mA", Value::of_bool(a)},
                     {"mB", Value::of_bool(b)},
                     {"mC", Value::of_bool(c)}};
  };

  EffectiveResponse none = effective_response(table, rule, val(false, false, false));
  CHECK_FALSE(none.cancelled);
  CHECK_FALSE(none.matched_defeater.has_value());
  CHECK(none.response->event == "Base");

  EffectiveResponse first = effective_response(table, rule, val(true, false, false));
  CHECK(first.matched_defeater == 0);
  CHECK(first.response->event == "First");

  EffectiveResponse second = effective_response(table, rule, val(true, true, false));
  CHECK(second.cancelled); // the bare defeater cancels
  CHECK(second.matched_defeater == 1);

  EffectiveResponse third = effective_response(table, rule, val(true, true, true));
  CHECK_FALSE(third.cancelled);
  CHECK(third.matched_defeater == 2);
  CHECK(third.response->event == "Third");
  REQUIRE(third.response->deadline.has_value());

  EffectiveResponse skip = effective_response(table, rule, val(false, true, true));
  CHECK(skip.matched_defeater == 2); // mC matches last even with mB true

  // a cancelled activation still shows up in the activation log
  Trace t;
  t.ticks.push_back(tick({"Ask"}, val(true, true, false)));
  auto acts = activations(spec, t);
  REQUIRE(acts.size() == 1);
  CHECK(acts[0].cancelled);
  CHECK_FALSE(acts[0].obligation.has_value());
  CHECK(is_compliant(spec, t).kind == VerdictKind::Compliant);
}

TEST_CASE("condition evaluation follows declaration order on scales") {
  SleecSpec spec = parse_ok(R"(
def_start
    event A
    measure level: scale(low, medium, high)
    measure battery: numeric
    measure ready: boolean
def_end
rule_start
    r1 := when A then A
rule_end
)");
  SymbolTable table = build_symbol_table(spec);
  Valuation v{{"level", Value::of_scale("high")},
              {"battery", Value::of_int(7)},
              {"ready", Value::of_bool(true)}};

  auto eval = [&](const ConditionPtr& c) {
    return evaluate_condition(table, c, v);
  };
  CHECK(eval(nullptr)); // absent condition reads true
  CHECK(eval(cond_atom("ready")));
  CHECK(eval(cond_compare("level", CompareOp::Gt, Literal::of_name("medium"))));
  CHECK_FALSE(eval(cond_compare("level", CompareOp::Le, Literal::of_name("low"))));
  CHECK(eval(cond_compare("battery", CompareOp::Ge, Literal::of_int(7))));
  CHECK_FALSE(eval(cond_compare("battery", CompareOp::Lt, Literal::of_int(7))));
  CHECK(eval(cond_and(cond_atom("ready"),
                      cond_not(cond_compare("battery", CompareOp::Eq,
                                            Literal::of_int(3))))));
  CHECK(eval(cond_or(cond_bool(false), cond_atom("ready"))));
  CHECK_FALSE(eval(cond_bool(false)));
}

TEST_CASE("clash detection is exact window containment") {
  auto ob = [](Polarity pol, int begin, int end, bool open) {
    Obligation o;
    o.source_rule = pol == Polarity::Require ? "req" : "forb";
    o.polarity = pol;
    o.event = "Ev";
    o.window_begin = begin;
    o.window_end = end;
    o.open_ended = open;
    return o;
  };
  auto req = [&](int b, int e) { return ob(Polarity::Require, b, e, false); };
  auto forb = [&](int b, int e) { return ob(Polarity::Forbid, b, e, false); };

  CHECK(obligation_clash(req(2, 4), forb(1, 5)));
  CHECK(obligation_clash(forb(1, 5), req(2, 4))); // argument order free
  CHECK(obligation_clash(req(1, 5), forb(1, 5)));
  CHECK_FALSE(obligation_clash(req(0, 5), forb(1, 5)));
  CHECK_FALSE(obligation_clash(req(1, 6), forb(1, 5)));

  // open-ended prohibition covers everything from its start
  CHECK(obligation_clash(req(2, 4), ob(Polarity::Forbid, 1, 1, true)));
  CHECK_FALSE(obligation_clash(req(0, 4), ob(Polarity::Forbid, 1, 1, true)));
  // open-ended requirement can always outlast a closed prohibition
  CHECK_FALSE(obligation_clash(ob(Polarity::Require, 2, 2, true), forb(0, 9)));
  // both open: containment is start-point comparison
  CHECK(obligation_clash(ob(Polarity::Require, 3, 3, true),
                         ob(Polarity::Forbid, 1, 1, true)));

  // same polarity or different events never clash
  CHECK_FALSE(obligation_clash(req(2, 4), req(2, 4)));
  Obligation other = forb(0, 9);
  other.event = "Other";
  CHECK_FALSE(obligation_clash(req(2, 4), other));
}

TEST_CASE("violations are stable under trace extension") {
  std::mt19937 rng(90210);
  int violated_seen = 0;
  for (int i = 0; i < 300; ++i) {
    SleecSpec spec = testsupport::random_small_spec(rng, false);
    Trace trace = testsupport::random_trace(rng, spec, 6, 2);
    bool violated = false;
    for (int len = 1; len <= trace.length(); ++len) {
      Trace prefix;
      prefix.ticks.assign(trace.ticks.begin(), trace.ticks.begin() + len);
      VerdictKind kind = is_compliant(spec, prefix).kind;
      if (violated)
        CHECK(kind == VerdictKind::Violated);
      if (kind == VerdictKind::Violated) {
        violated = true;
        ++violated_seen;
      }
    }
  }
  CHECK(violated_seen > 0); // the sample actually exercises the property
}
