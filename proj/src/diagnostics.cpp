#include "sleec/diagnostics.hpp"

#include <sstream>

namespace sleec {

const char* diag_kind_name(DiagKind kind) {
  switch (kind) {
  case DiagKind::ParseError: return "ParseError";
  case DiagKind::UndeclaredIdentifier: return "UndeclaredIdentifier";
  case DiagKind::SortMismatch: return "SortMismatch";
  case DiagKind::DuplicateDefinition: return "DuplicateDefinition";
  case DiagKind::MissingAttribute: return "MissingAttribute";
  case DiagKind::MissingNormativeAttrs: return "MissingNormativeAttrs";
  case DiagKind::CyclicRefinement: return "CyclicRefinement";
  case DiagKind::UnrefinedGoal: return "UnrefinedGoal";
  case DiagKind::NonTaskLeaf: return "NonTaskLeaf";
  case DiagKind::OrphanTask: return "OrphanTask";
  case DiagKind::MultipleParents: return "MultipleParents";
  case DiagKind::RefinementParentNotGoal: return "RefinementParentNotGoal";
  case DiagKind::NameCollision: return "NameCollision";
  }
  return "Unknown";
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  if (d.loc.valid())
    os << d.loc.line << ":" << d.loc.column << ": ";
  os << diag_kind_name(d.kind) << ": " << d.message;
  if (!d.context.empty())
    os << " (in " << d.context << ")";
  return os.str();
}

std::string format_diagnostics(const std::vector<Diagnostic>& ds,
                               const std::string& path) {
  std::ostringstream os;
  for (const auto& d : ds)
    os << path << ":" << format_diagnostic(d) << "\n";
  return os.str();
}

} // namespace sleec
