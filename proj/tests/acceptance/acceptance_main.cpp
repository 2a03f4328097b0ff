// Gate suite for the six shipping criteria. One PASS/FAIL line per
// criterion; the exit code is the number of failed gates. Budgets and
// sample sizes are pinned here so a regression cannot loosen them silently.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracle.hpp"
#include "sleec/checker.hpp"
#include "sleec/goal_parser.hpp"
#include "sleec/goal_validate.hpp"
#include "sleec/parser.hpp"
#include "sleec/printer.hpp"
#include "sleec/sema.hpp"
#include "sleec/semantics.hpp"
#include "sleec/translate.hpp"

using namespace sleec;
using namespace testsupport;

namespace {

constexpr int kConflictSearchBudgetMs = 10000;
constexpr int kOracleBudgetMs = 60000;
constexpr int kOracleInstances = 200;
constexpr int kMonotonicityPairs = 500;
constexpr int kCountFormulaModels = 50;
constexpr long long kOracleMaxTraces = 200000;

std::vector<std::string> g_errors;

void fail(const std::string& message) { g_errors.push_back(message); }

bool expect(bool ok, const std::string& message) {
  if (!ok)
    fail(message);
  return ok;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    fail("cannot read " + path);
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SleecSpec load_spec(const std::string& path, bool& ok) {
  std::vector<Diagnostic> diags;
  auto spec = parse_sleec(read_file(path), diags);
  if (!spec || !diags.empty() || !check_names_and_types(*spec).empty()) {
    fail(path + " did not parse cleanly");
    ok = false;
    return {};
  }
  return *spec;
}

GoalModel load_model(const std::string& path, bool& ok) {
  std::vector<Diagnostic> diags;
  auto model = parse_goal_model(read_file(path), diags);
  if (!model || !diags.empty() || !validate_goal_model(*model).empty()) {
    fail(path + " did not validate cleanly");
    ok = false;
    return {};
  }
  return *model;
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// criterion 1: the corrected sensor network rule set, checked at bound 6,
// yields exactly one situational diagnosis naming r1 and r3, with the
// co-occurrence witness and the CallCaregiver window clash, inside budget.
bool criterion1() {
  bool ok = true;
  SleecSpec spec = load_spec(std::string(FIXTURE_DIR) + "/bsn_fixed.sleec", ok);
  if (!ok)
    return false;

  CheckConfig cfg;
  cfg.bound_ticks = 6;
  auto start = std::chrono::steady_clock::now();
  std::vector<Diagnosis> diagnoses = check_spec(spec, cfg);
  long long ms = elapsed_ms(start);

  ok &= expect(ms < kConflictSearchBudgetMs,
               "conflict search took " + std::to_string(ms) + " ms");
  if (!expect(diagnoses.size() == 1, "expected exactly one diagnosis, got " +
                                         std::to_string(diagnoses.size())))
    return false;
  const Diagnosis& d = diagnoses[0];
  ok &= expect(d.kind == DiagnosisKind::Situational,
               "diagnosis is not situational");
  ok &= expect(d.rules == std::vector<std::string>{"r1", "r3"},
               "diagnosis does not implicate r1 and r3");

  if (expect(d.witness.has_value() && d.witness->length() >= 1,
             "diagnosis carries no witness")) {
    const TraceTick& t0 = d.witness->ticks.front();
    ok &= expect(t0.events.count("UserAsksStopTracking") == 1 &&
                     t0.events.count("UserRequestsPrivacy") == 1,
                 "witness tick 0 lacks the co-occurring triggers");
    ok &= expect(t0.measures.at("trackVitals") == Value::of_bool(true),
                 "witness trackVitals is not true");
    ok &= expect(t0.measures.at("riskLevel") == Value::of_scale("high"),
                 "witness riskLevel is not high");
    ok &= expect(t0.measures.at("userConsent") == Value::of_bool(false),
                 "witness userConsent is not false");

    // the witness must replay as a live, non-violated situation
    ok &= expect(replays_as_dead_end_prefix(spec, "r1", *d.witness),
                 "witness does not replay for r1");
  } else {
    ok = false;
  }

  if (expect(d.clash.has_value(), "diagnosis carries no window clash")) {
    const ClashInfo& c = *d.clash;
    ok &= expect(c.require_side.event == "CallCaregiver",
                 "clash is not on CallCaregiver");
    bool contained =
        c.require_side.window_begin >= c.forbid_side.window_begin &&
        (c.forbid_side.open_ended ||
         (!c.require_side.open_ended &&
          c.require_side.window_end <= c.forbid_side.window_end));
    ok &= expect(contained, "require window not inside forbid window");
  } else {
    ok = false;
  }
  return ok;
}

// criterion 2: one-task translation matches the rule templates token for
// token via golden files, and the count formula holds on random models.
bool criterion2() {
  bool ok = true;
  GoalModel model = load_model(std::string(FIXTURE_DIR) + "/single_task.gsl", ok);
  if (!ok)
    return false;

  TranslationResult result = translate_model(model);
  ok &= expect(result.spec.rules.size() == 4,
               "one task with an obstacle must yield exactly 4 rules");

  const char* expected[] = {
      "RuleT1_1 := when ResidentRequestsDose and doseConfirmed then "
      "StartDeliverDose",
      "RuleT1_2 := when StartDeliverDose then PursuingDeliverDose within 2 "
      "minutes",
      "RuleT1_3 := when PursuingDeliverDose and doseDelivered then "
      "AchievedDeliverDose\n        unless not doseDelivered then "
      "ReportFailureDeliverDose",
      "RuleT1_Obstacle := when NurseOverrides then not PursuingDeliverDose",
  };
  for (size_t i = 0; i < result.spec.rules.size() && i < 4; ++i)
    ok &= expect(print_rule(result.spec.rules[i]) == expected[i],
                 "rule " + result.spec.rules[i].id +
                     " does not match its template");

  std::string golden =
      read_file(std::string(FIXTURE_DIR) + "/single_task_translated.sleec");
  ok &= expect(render_translation(result) == golden,
               "single-task translation differs from its golden file");

  std::mt19937 rng(20240811);
  for (int i = 0; i < kCountFormulaModels; ++i) {
    ModelStats stats;
    GoalModel random_model = random_goal_model(rng, &stats);
    if (!expect(validate_goal_model(random_model).empty(),
                "random model failed validation")) {
      ok = false;
      continue;
    }
    TranslationResult r = translate_model(random_model);
    int want = stats.achieve_goals + 3 * stats.tasks + stats.obstacles;
    ok &= expect(static_cast<int>(r.spec.rules.size()) == want,
                 "rule count formula failed on random model " +
                     std::to_string(i));
    ok &= expect(static_cast<int>(r.spec.purposes.size()) ==
                     stats.maintain_goals,
                 "purpose count failed on random model " + std::to_string(i));
  }
  return ok;
}

// criterion 3: the reconstructed sensor network goal model produces the
// RuleT6_2 / RuleT6_Obstacle situational conflict, which disappears once
// the negotiated model (obstacle removed) is translated and re-checked.
bool criterion3() {
  bool ok = true;
  GoalModel model = load_model(std::string(FIXTURE_DIR) + "/bsn.gsl", ok);
  if (!ok)
    return false;

  // the fixture must announce that it is a reconstruction
  ok &= expect(read_file(std::string(FIXTURE_DIR) + "/bsn.gsl")
                       .find("reconstruction") != std::string::npos,
               "goal model fixture lost its reconstruction label");

  TranslationResult result = translate_model(model);
  CheckConfig cfg;
  cfg.bound_ticks = default_bound(result.spec);
  std::vector<Diagnosis> diagnoses = check_spec(result.spec, cfg, &result.map);

  const std::vector<std::string> pair{"RuleT6_2", "RuleT6_Obstacle"};
  bool found = false;
  for (const auto& d : diagnoses)
    if (d.kind == DiagnosisKind::Situational && d.rules == pair)
      found = true;
  ok &= expect(found, "translated model lacks the expected conflict pair");
  ok &= expect(diagnoses.size() == 1,
               "translated model has extra diagnoses: " +
                   std::to_string(diagnoses.size()));

  GoalModel negotiated =
      load_model(std::string(FIXTURE_DIR) + "/bsn_negotiated.gsl", ok);
  if (!ok)
    return false;
  TranslationResult after = translate_model(negotiated);
  CheckConfig cfg2;
  cfg2.bound_ticks = default_bound(after.spec);
  for (const auto& d : check_spec(after.spec, cfg2, &after.map)) {
    bool has_t62 = std::find(d.rules.begin(), d.rules.end(), "RuleT6_2") !=
                   d.rules.end();
    bool has_obs = std::find(d.rules.begin(), d.rules.end(),
                             "RuleT6_Obstacle") != d.rules.end();
    ok &= expect(!(has_t62 && has_obs),
                 "negotiated model still reports the conflict pair");
  }
  return ok;
}

// criterion 4: bounded searches agree with the exhaustive oracle on 200
// random specs, with zero discrepancies, inside the time budget.
bool criterion4() {
  bool ok = true;
  std::mt19937 rng(811);
  auto start = std::chrono::steady_clock::now();
  int discrepancies = 0;

  for (int iter = 0; iter < kOracleInstances; ++iter) {
    SleecSpec spec;
    CheckConfig cfg;
    cfg.slicing = false;
    cfg.max_events_per_tick = rand_int(rng, 1, 2);
    for (;;) {
      spec = random_small_spec(rng, iter % 2 == 0);
      cfg.bound_ticks = std::max(rand_int(rng, 2, 4), minimum_bound(spec));
      if (full_trace_count(spec, cfg) <= kOracleMaxTraces)
        break;
    }

    OracleVerdicts oracle = exhaustive_verdicts(spec, cfg);
    for (const auto& rule : spec.rules) {
      if (find_trigger_witness(spec, rule.id, cfg).has_value() !=
          oracle.rule_has_trigger_witness.at(rule.id))
        ++discrepancies;
      if (find_situational_conflict(spec, rule.id, cfg).has_value() !=
          oracle.rule_reaches_dead_end.at(rule.id))
        ++discrepancies;
    }
    for (const auto& purpose : spec.purposes)
      if (check_purpose(spec, purpose.id, cfg).has_value() !=
          oracle.purpose_satisfiable.at(purpose.id))
        ++discrepancies;
  }

  long long ms = elapsed_ms(start);
  ok &= expect(discrepancies == 0, std::to_string(discrepancies) +
                                       " oracle discrepancies");
  ok &= expect(ms < kOracleBudgetMs,
               "oracle pass took " + std::to_string(ms) + " ms");
  return ok;
}

// criterion 5: violation monotonicity on 500 random pairs, witness replays,
// and last-match defeater resolution on a constructed chain of three.
bool criterion5() {
  bool ok = true;
  std::mt19937 rng(112358);

  int violated_seen = 0;
  for (int i = 0; i < kMonotonicityPairs; ++i) {
    SleecSpec spec = random_small_spec(rng, false);
    Trace trace = random_trace(rng, spec, rand_int(rng, 1, 6), 2);
    Verdict before = is_compliant(spec, trace);
    if (before.kind != VerdictKind::Violated)
      continue;
    ++violated_seen;
    Trace extended = trace;
    int extra = rand_int(rng, 1, 2);
    Trace tail = random_trace(rng, spec, extra, 2);
    for (auto& tick : tail.ticks)
      extended.ticks.push_back(tick);
    if (is_compliant(spec, extended).kind != VerdictKind::Violated) {
      fail("violation vanished under extension at pair " + std::to_string(i));
      ok = false;
    }
  }
  ok &= expect(violated_seen > 0, "no violated pair sampled");

  // every witness the searches hand back replays to its claimed verdict
  int witnesses = 0;
  for (int i = 0; i < 40; ++i) {
    SleecSpec spec = random_small_spec(rng, true);
    CheckConfig cfg;
    cfg.slicing = false;
    cfg.bound_ticks = std::max(3, minimum_bound(spec));
    for (const auto& rule : spec.rules) {
      if (auto w = find_trigger_witness(spec, rule.id, cfg)) {
        ++witnesses;
        if (!replays_as_trigger_witness(spec, rule.id, *w)) {
          fail("trigger witness replay failed for " + rule.id);
          ok = false;
        }
      }
      auto conflict = find_situational_conflict(spec, rule.id, cfg);
      if (conflict && conflict->witness) {
        ++witnesses;
        if (!replays_as_dead_end_prefix(spec, rule.id, *conflict->witness)) {
          fail("dead-end witness replay failed for " + rule.id);
          ok = false;
        }
      }
    }
  }
  ok &= expect(witnesses > 0, "no witnesses produced to replay");

  // defeater chains resolve to the last matching clause
  std::vector<Diagnostic> diags;
  auto chain_spec = parse_sleec(R"(def_start
  event EvA
  event EvB
  event First
  event Second
  event Third
  measure mA: boolean
  measure mB: boolean
  measure mC: boolean
def_end

rule_start
  r := when EvA then EvB
       unless mA then First
       unless mB
       unless mC then Third within 1 minutes
rule_end
)",
                                diags);
  if (!expect(chain_spec.has_value() && diags.empty(),
              "defeater chain spec failed to parse"))
    return false;
  SymbolTable table = build_symbol_table(*chain_spec);
  const Rule& rule = chain_spec->rules[0];
  for (int mask = 0; mask < 8; ++mask) {
    Valuation v;
    v["mA"] = Value::of_bool(mask & 1);
    v["mB"] = Value::of_bool(mask & 2);
    v["mC"] = Value::of_bool(mask & 4);
    EffectiveResponse r = effective_response(table, rule, v);
    std::optional<int> want; // index of the last matching defeater
    if (mask & 1)
      want = 0;
    if (mask & 2)
      want = 1;
    if (mask & 4)
      want = 2;
    if (r.matched_defeater != want) {
      fail("defeater resolution wrong for mask " + std::to_string(mask));
      ok = false;
    }
    bool cancelled_expected = want.has_value() && *want == 1;
    if (r.cancelled != cancelled_expected) {
      fail("cancellation wrong for mask " + std::to_string(mask));
      ok = false;
    }
  }
  return ok;
}

// criterion 6: parse -> print -> parse structural equality across the
// fixture corpus, and byte-identical translation across repeated runs.
bool criterion6() {
  bool ok = true;
  namespace fs = std::filesystem;
  int checked = 0;
  for (const auto& entry : fs::directory_iterator(FIXTURE_DIR)) {
    if (entry.path().extension() != ".sleec")
      continue;
    ++checked;
    std::vector<Diagnostic> diags;
    auto spec = parse_sleec(read_file(entry.path().string()), diags);
    if (!expect(spec.has_value() && diags.empty(),
                entry.path().filename().string() + " failed to parse")) {
      ok = false;
      continue;
    }
    std::string printed = print_sleec(*spec);
    std::vector<Diagnostic> diags2;
    auto again = parse_sleec(printed, diags2);
    if (!expect(again.has_value() && diags2.empty(),
                entry.path().filename().string() +
                    " printed form failed to parse")) {
      ok = false;
      continue;
    }
    ok &= expect(specs_equal(*spec, *again),
                 entry.path().filename().string() +
                     " changed across print/parse");
  }
  ok &= expect(checked >= 4, "fixture corpus went missing");

  for (const char* name : {"/bsn.gsl", "/single_task.gsl"}) {
    bool loaded = true;
    GoalModel model = load_model(std::string(FIXTURE_DIR) + name, loaded);
    if (!loaded) {
      ok = false;
      continue;
    }
    std::string once = render_translation(translate_model(model));
    std::string twice = render_translation(translate_model(model));
    ok &= expect(once == twice,
                 std::string(name) + " translation is not deterministic");
  }

  std::string golden =
      read_file(std::string(FIXTURE_DIR) + "/bsn_translated.sleec");
  bool loaded = true;
  GoalModel model = load_model(std::string(FIXTURE_DIR) + "/bsn.gsl", loaded);
  if (loaded)
    ok &= expect(render_translation(translate_model(model)) == golden,
                 "translation drifted from its golden file");
  else
    ok = false;
  return ok;
}

struct Gate {
  int number;
  const char* label;
  bool (*run)();
};

} // namespace

int main() {
  const Gate gates[] = {
      {1, "corrected rule set yields exactly the r1/r3 situational conflict",
       criterion1},
      {2, "task translation matches the rule templates and golden files",
       criterion2},
      {3, "goal model conflict appears and clears after negotiation",
       criterion3},
      {4, "bounded searches agree with the exhaustive oracle on 200 specs",
       criterion4},
      {5, "verdict monotonicity, witness replays and defeater resolution",
       criterion5},
      {6, "print/parse round-trips and deterministic translation",
       criterion6},
  };

  int failures = 0;
  for (const Gate& gate : gates) {
    g_errors.clear();
    bool passed = false;
    try {
      passed = gate.run();
    } catch (const std::exception& e) {
      fail(std::string("exception: ") + e.what());
    }
    if (passed && g_errors.empty()) {
      std::printf("PASS criterion %d: %s\n", gate.number, gate.label);
    } else {
      std::printf("FAIL criterion %d: %s\n", gate.number, gate.label);
      for (const auto& message : g_errors)
        std::printf("    %s\n", message.c_str());
      ++failures;
    }
  }
  return failures;
}
