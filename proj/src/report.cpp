#include "sleec/report.hpp"

#include <algorithm>
#include <sstream>

#include <openssl/evp.h>

#include "sleec/printer.hpp"

namespace sleec {

namespace {

std::string value_text(const Value& v) {
  switch (v.kind) {
  case Value::Kind::Bool: return v.bool_value ? "true" : "false";
  case Value::Kind::Int: return std::to_string(v.int_value);
  case Value::Kind::Scale: return v.scale_value;
  }
  return "?";
}

std::string tick_summary(const TraceTick& tick) {
  std::string out = "events {";
  bool first = true;
  for (const auto& e : tick.events) {
    if (!first)
      out += ", ";
    out += e;
    first = false;
  }
  out += "}";
  if (!tick.measures.empty()) {
    out += " | ";
    first = true;
    for (const auto& [name, value] : tick.measures) {
      if (!first)
        out += ", ";
      out += name + "=" + value_text(value);
      first = false;
    }
  }
  return out;
}

std::string window_text(const Obligation& ob) {
  std::string out =
      "[" + std::to_string(ob.window_begin) + ", " + std::to_string(ob.window_end);
  out += ob.open_ended ? "+]" : "]";
  return out;
}

// Multi-line rule/purpose text re-indented for report nesting.
std::string indented_item(const std::string& text, const std::string& indent) {
  std::string out = indent;
  for (char ch : text) {
    out.push_back(ch);
    if (ch == '\n')
      out += indent;
  }
  out.push_back('\n');
  return out;
}

} // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string render_witness_text(const Trace& trace, std::string indent) {
  std::string out;
  for (int t = 0; t < trace.length(); ++t)
    out += indent + "tick " + std::to_string(t) + ": " +
           tick_summary(trace.ticks[t]) + "\n";
  if (trace.ticks.empty())
    out += indent + "(empty trace)\n";
  return out;
}

std::string render_diagnosis_text(const Diagnosis& d, const SleecSpec& spec) {
  std::string out;
  std::string rules;
  for (const auto& r : d.rules) {
    if (!rules.empty())
      rules += ", ";
    rules += r;
  }
  switch (d.kind) {
  case DiagnosisKind::Vacuous:
    out += "vacuous conflict: " + rules + " (bound " +
           std::to_string(d.bound_used) +
           "): no compliant behaviour triggers the rule\n";
    break;
  case DiagnosisKind::Situational:
    out += "situational conflict: " + rules + " (bound " +
           std::to_string(d.bound_used) + ")\n";
    break;
  case DiagnosisKind::PurposeUnsat:
    out += "purpose unsatisfiable: " + rules + " (bound " +
           std::to_string(d.bound_used) +
           "): no compliant behaviour exhibits it\n";
    break;
  }

  for (const auto& id : d.rules) {
    if (const Rule* rule = find_rule(spec, id))
      out += indented_item(print_rule(*rule), "    ");
    else if (const Purpose* purpose = find_purpose(spec, id))
      out += indented_item(print_purpose(*purpose), "    ");
  }

  if (d.clash) {
    out += "    clash on " + d.clash->require_side.event + ": require window " +
           window_text(d.clash->require_side) + " from " +
           d.clash->require_side.source_rule + " inside forbid window " +
           window_text(d.clash->forbid_side) + " from " +
           d.clash->forbid_side.source_rule + "\n";
  }
  if (d.witness) {
    out += "    witness:\n";
    out += render_witness_text(*d.witness, "        ");
  }
  if (!d.value_context.empty()) {
    out += "    value context:\n";
    for (const auto& e : d.value_context) {
      out += "        " + e.generated + " <- " + e.source + "." + e.attribute +
             " (template " + e.template_id + ")";
      if (e.norm_principle)
        out += " principle: " + *e.norm_principle;
      if (e.proxy)
        out += ", proxy: " + *e.proxy;
      out += "\n";
    }
  }
  return out;
}

std::string render_replay_text(const SleecSpec& spec, const Trace& trace) {
  SymbolTable table = build_symbol_table(spec);
  TickScale scale = normalize_durations(spec);
  std::vector<ActivationRecord> acts = activations(table, scale, spec, trace);
  Verdict verdict = is_compliant(table, scale, spec, trace);

  int length = trace.length();
  std::vector<std::vector<std::string>> lines(
      static_cast<size_t>(std::max(length, 0)));
  auto occurs_at = [&](const Obligation& ob) -> int {
    int last = std::min(ob.window_end, length - 1);
    for (int t = ob.window_begin; t <= last; ++t)
      if (trace.ticks[t].events.count(ob.event))
        return t;
    return -1;
  };

  for (const auto& act : acts) {
    if (act.cancelled) {
      std::string line = act.rule + " activation cancelled";
      if (act.matched_defeater)
        line += " by defeater " + std::to_string(*act.matched_defeater + 1);
      lines[act.tick].push_back(std::move(line));
      continue;
    }
    const Obligation& ob = *act.obligation;
    std::string head = act.rule + " activated: ";
    head += ob.polarity == Polarity::Forbid ? "forbid " : "require ";
    head += ob.event + " in window " + window_text(ob);
    if (act.matched_defeater)
      head += " (defeater " + std::to_string(*act.matched_defeater + 1) + ")";
    lines[act.tick].push_back(std::move(head));

    int hit = occurs_at(ob);
    if (ob.polarity == Polarity::Require) {
      if (hit >= 0)
        lines[hit].push_back(ob.event + " discharged at tick " +
                             std::to_string(hit) + " (" + act.rule + ")");
      else if (!ob.open_ended && ob.window_end <= length - 1)
        lines[ob.window_end].push_back(
            "violation: " + ob.event + " missing in window " + window_text(ob) +
            " (" + act.rule + ")");
    } else if (hit >= 0) {
      lines[hit].push_back("violation: " + ob.event + " occurred at tick " +
                           std::to_string(hit) + " inside forbid window " +
                           window_text(ob) + " (" + act.rule + ")");
    }
  }

  std::string out;
  for (int t = 0; t < length; ++t) {
    out += "tick " + std::to_string(t) + ": " + tick_summary(trace.ticks[t]) +
           "\n";
    for (const auto& line : lines[t])
      out += "    " + line + "\n";
  }
  for (const auto& ob : verdict.pending)
    out += "pending: " + std::string(ob.polarity == Polarity::Forbid
                                         ? "forbid "
                                         : "require ") +
           ob.event + " in window " + window_text(ob) + " (" + ob.source_rule +
           ")\n";
  out += "verdict: " + std::string(verdict_kind_name(verdict.kind)) + "\n";
  return out;
}

nlohmann::json check_report_json(const std::string& command,
                                 const std::vector<InputRecord>& inputs,
                                 int bound,
                                 const std::vector<Diagnosis>& diagnoses) {
  nlohmann::json j;
  j["command"] = command;
  nlohmann::json ins = nlohmann::json::array();
  for (const auto& input : inputs)
    ins.push_back({{"path", input.path}, {"sha256", input.sha256}});
  j["inputs"] = std::move(ins);
  j["bound"] = bound;
  j["outcome"] = diagnoses.empty() ? "clean" : "diagnoses";
  j["diagnoses"] = diagnoses_to_json(diagnoses);
  return j;
}

} // namespace sleec
