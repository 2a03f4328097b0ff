#pragma once

#include <string>
#include <vector>

#include "sleec/checker.hpp"
#include "sleec/semantics.hpp"
#include "sleec/trace.hpp"

#include <json.hpp>

namespace sleec {

// Input file identity for audit trails across negotiation iterations.
struct InputRecord {
  std::string path;
  std::string sha256;
};

// Text rendering of one diagnosis: implicated rule texts, the clashing
// clauses, the witness timeline and the value-context lines.
std::string render_diagnosis_text(const Diagnosis& d, const SleecSpec& spec);

std::string render_witness_text(const Trace& trace, std::string indent);

// Per-tick replay log: activations, discharges, expiries and the final
// verdict line.
std::string render_replay_text(const SleecSpec& spec, const Trace& trace);

// Deterministic check report for --format json. Volatile fields (wall-clock
// time) are deliberately excluded so identical inputs produce identical
// bytes; elapsed time goes to stderr in text mode instead.
nlohmann::json check_report_json(const std::string& command,
                                 const std::vector<InputRecord>& inputs,
                                 int bound,
                                 const std::vector<Diagnosis>& diagnoses);

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

} // namespace sleec
