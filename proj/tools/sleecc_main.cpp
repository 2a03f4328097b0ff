// sleecc: validate / translate / check / replay front end.
//
// Exit codes: 0 clean, 1 findings, 2 input errors, 3 I/O or environment.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sleec/checker.hpp"
#include "sleec/diagnostics.hpp"
#include "sleec/goal_parser.hpp"
#include "sleec/goal_validate.hpp"
#include "sleec/parser.hpp"
#include "sleec/report.hpp"
#include "sleec/sema.hpp"
#include "sleec/trace.hpp"
#include "sleec/translate.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

bool write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << bytes;
  out.flush();
  return static_cast<bool>(out);
}

// Parse + semantic checks for one .sleec document. Prints diagnostics and
// reports whether the spec is usable.
std::optional<sleec::SleecSpec> load_sleec(const std::string& path,
                                           const std::string& text) {
  std::vector<sleec::Diagnostic> diags;
  auto spec = sleec::parse_sleec(text, diags);
  if (spec) {
    auto sema = sleec::check_names_and_types(*spec);
    diags.insert(diags.end(), sema.begin(), sema.end());
  }
  if (!diags.empty()) {
    std::cerr << sleec::format_diagnostics(diags, path);
    return std::nullopt;
  }
  return spec;
}

std::optional<sleec::GoalModel> load_goal_model(const std::string& path,
                                                const std::string& text) {
  std::vector<sleec::Diagnostic> diags;
  auto model = sleec::parse_goal_model(text, diags);
  if (model) {
    auto sema = sleec::validate_goal_model(*model);
    diags.insert(diags.end(), sema.begin(), sema.end());
  }
  if (!diags.empty()) {
    std::cerr << sleec::format_diagnostics(diags, path);
    return std::nullopt;
  }
  return model;
}

int run_validate(const std::vector<std::string>& paths) {
  bool any_errors = false;
  for (const auto& path : paths) {
    auto text = read_file(path);
    if (!text) {
      std::cerr << path << ": cannot read file\n";
      return kExitIo;
    }
    if (ends_with(path, ".gsl")) {
      if (!load_goal_model(path, *text)) any_errors = true;
    } else if (ends_with(path, ".sleec")) {
      if (!load_sleec(path, *text)) any_errors = true;
    } else {
      std::cerr << path << ": expected a .sleec or .gsl file\n";
      return kExitInput;
    }
  }
  return any_errors ? kExitInput : kExitClean;
}

int run_translate(const std::string& goal_path, const std::string& out_path,
                  const std::string& trace_map_path) {
  auto text = read_file(goal_path);
  if (!text) {
    std::cerr << goal_path << ": cannot read file\n";
    return kExitIo;
  }
  auto model = load_goal_model(goal_path, *text);
  if (!model) return kExitInput;

  sleec::TranslationResult result;
  try {
    result = sleec::translate_model(*model);
  } catch (const sleec::NameCollisionError& e) {
    std::cerr << goal_path << ": " << e.what() << "\n";
    return kExitInput;
  }

  std::string rendered = sleec::render_translation(result);
  if (out_path.empty()) {
    std::cout << rendered;
  } else if (!write_file(out_path, rendered)) {
    std::cerr << out_path << ": cannot write file\n";
    return kExitIo;
  }
  if (!trace_map_path.empty()) {
    std::string bytes = sleec::traceability_to_json(result.map).dump(2);
    bytes.push_back('\n');
    if (!write_file(trace_map_path, bytes)) {
      std::cerr << trace_map_path << ": cannot write file\n";
      return kExitIo;
    }
  }
  return kExitClean;
}

// --bound beats SLEECC_BOUND beats the per-spec default.
std::optional<int> bound_from_env() {
  const char* raw = std::getenv("SLEECC_BOUND");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1 || v > 1000000) return std::nullopt;
  return static_cast<int>(v);
}

int run_check(const std::string& spec_path, int bound_flag,
              int max_simultaneous, bool no_slice, const std::string& format,
              const std::string& trace_map_path) {
  auto text = read_file(spec_path);
  if (!text) {
    std::cerr << spec_path << ": cannot read file\n";
    return kExitIo;
  }
  auto spec = load_sleec(spec_path, *text);
  if (!spec) return kExitInput;

  std::vector<sleec::InputRecord> inputs;
  inputs.push_back({spec_path, sleec::sha256_hex(*text)});

  sleec::TraceabilityMap map;
  const sleec::TraceabilityMap* map_ptr = nullptr;
  if (!trace_map_path.empty()) {
    auto map_text = read_file(trace_map_path);
    if (!map_text) {
      std::cerr << trace_map_path << ": cannot read file\n";
      return kExitIo;
    }
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(*map_text);
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << trace_map_path << ": " << e.what() << "\n";
      return kExitInput;
    }
    std::string error;
    auto loaded = sleec::traceability_from_json(parsed, error);
    if (!loaded) {
      std::cerr << trace_map_path << ": " << error << "\n";
      return kExitInput;
    }
    map = *loaded;
    map_ptr = &map;
    inputs.push_back({trace_map_path, sleec::sha256_hex(*map_text)});
  }

  sleec::CheckConfig cfg;
  if (bound_flag > 0) {
    cfg.bound_ticks = bound_flag;
  } else if (auto env = bound_from_env()) {
    cfg.bound_ticks = *env;
  } else {
    cfg.bound_ticks = sleec::default_bound(*spec);
  }
  cfg.max_events_per_tick = max_simultaneous;
  cfg.slicing = !no_slice;

  auto started = std::chrono::steady_clock::now();
  std::vector<sleec::Diagnosis> diagnoses;
  try {
    diagnoses = sleec::check_spec(*spec, cfg, map_ptr);
  } catch (const sleec::BoundTooSmallError& e) {
    std::cerr << spec_path << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const sleec::InstanceTooLargeError& e) {
    std::cerr << spec_path << ": " << e.what() << "\n";
    return kExitInput;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();

  if (format == "json") {
    nlohmann::json report =
        sleec::check_report_json("check", inputs, cfg.bound_ticks, diagnoses);
    std::cout << report.dump(2) << "\n";
  } else {
    if (diagnoses.empty()) {
      std::cout << "no conflicts found (bound " << cfg.bound_ticks << ")\n";
    } else {
      for (size_t i = 0; i < diagnoses.size(); ++i) {
        if (i > 0) std::cout << "\n";
        std::cout << sleec::render_diagnosis_text(diagnoses[i], *spec);
      }
    }
    std::cerr << "checked in " << elapsed << " ms\n";
  }
  return diagnoses.empty() ? kExitClean : kExitFindings;
}

int run_replay(const std::string& spec_path, const std::string& trace_path) {
  auto text = read_file(spec_path);
  if (!text) {
    std::cerr << spec_path << ": cannot read file\n";
    return kExitIo;
  }
  auto spec = load_sleec(spec_path, *text);
  if (!spec) return kExitInput;

  auto trace_text = read_file(trace_path);
  if (!trace_text) {
    std::cerr << trace_path << ": cannot read file\n";
    return kExitIo;
  }
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(*trace_text);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << trace_path << ": " << e.what() << "\n";
    return kExitInput;
  }
  auto table = sleec::build_symbol_table(*spec);
  std::vector<sleec::Diagnostic> diags;
  auto trace = sleec::trace_from_json(parsed, table, diags);
  if (!trace) {
    std::cerr << sleec::format_diagnostics(diags, trace_path);
    return kExitInput;
  }

  std::cout << sleec::render_replay_text(*spec, *trace);
  auto verdict = sleec::is_compliant(*spec, *trace);
  return verdict.kind == sleec::VerdictKind::Compliant ? kExitClean
                                                       : kExitFindings;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLEEC rule language toolchain"};
  app.require_subcommand(1);

  std::vector<std::string> validate_paths;
  auto* validate =
      app.add_subcommand("validate", "parse and check .sleec / .gsl files");
  validate->add_option("paths", validate_paths, "input files")
      ->required()
      ->expected(-1);

  std::string goal_path, out_path, translate_map_path;
  auto* translate =
      app.add_subcommand("translate", "translate a goal model to rules");
  translate->add_option("goal", goal_path, "goal model (.gsl)")->required();
  translate->add_option("-o,--out", out_path,
                        "output .sleec path (default stdout)");
  translate->add_option("--trace-map", translate_map_path,
                        "write the traceability map here");

  std::string check_path, check_format = "text", check_map_path;
  int check_bound = 0;
  int check_max_simultaneous = 3;
  bool check_no_slice = false;
  auto* check = app.add_subcommand("check", "search for rule conflicts");
  check->add_option("spec", check_path, "rule spec (.sleec)")->required();
  check->add_option("--bound", check_bound, "trace length bound in ticks")
      ->check(CLI::PositiveNumber);
  check->add_option("--max-simultaneous", check_max_simultaneous,
                    "max events per tick")
      ->check(CLI::PositiveNumber);
  check->add_flag("--no-slice", check_no_slice,
                  "check each rule against the whole spec");
  check->add_option("--format", check_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_option("--trace-map", check_map_path,
                    "traceability map for value context");

  std::string replay_spec_path, replay_trace_path;
  auto* replay =
      app.add_subcommand("replay", "evaluate a trace against a spec");
  replay->add_option("spec", replay_spec_path, "rule spec (.sleec)")
      ->required();
  replay->add_option("trace", replay_trace_path, "trace (.json)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitClean : kExitInput;
  }

  if (validate->parsed()) return run_validate(validate_paths);
  if (translate->parsed())
    return run_translate(goal_path, out_path, translate_map_path);
  if (check->parsed())
    return run_check(check_path, check_bound, check_max_simultaneous,
                     check_no_slice, check_format, check_map_path);
  if (replay->parsed()) return run_replay(replay_spec_path, replay_trace_path);
  return kExitInput;
}
