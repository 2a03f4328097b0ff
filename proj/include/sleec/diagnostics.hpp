#pragma once

#include <string>
#include <vector>

namespace sleec {

// 1-based line/column; {0,0} means "no position" (e.g. whole-file checks).
struct SourceLoc {
  int line = 0;
  int column = 0;
  bool valid() const { return line > 0; }
};

enum class DiagKind {
  ParseError,
  UndeclaredIdentifier,
  SortMismatch,
  DuplicateDefinition,
  MissingAttribute,
  MissingNormativeAttrs,
  CyclicRefinement,
  UnrefinedGoal,
  NonTaskLeaf,
  OrphanTask,
  MultipleParents,
  RefinementParentNotGoal,
  NameCollision,
};

const char* diag_kind_name(DiagKind kind);

struct Diagnostic {
  DiagKind kind = DiagKind::ParseError;
  SourceLoc loc;
  std::string message;
  // Offending identifier, when one exists (measure name, event name, ...).
  std::string subject;
  // Enclosing rule/goal/task id, when known.
  std::string context;
};

// "line:col: kind: message (in context)" rendering for CLI output.
std::string format_diagnostic(const Diagnostic& d);
std::string format_diagnostics(const std::vector<Diagnostic>& ds,
                               const std::string& path);

} // namespace sleec
