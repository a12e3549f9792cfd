#include "tagweaver/diagnostic.hpp"

#include <algorithm>

namespace tagweaver {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::E1_UnresolvedElement: return "E1_UnresolvedElement";
    case Condition::E2_DuplicateTagTypeName: return "E2_DuplicateTagTypeName";
    case Condition::E3_1_UnknownTagType: return "E3_1_UnknownTagType";
    case Condition::E3_2_ScopeMismatch: return "E3_2_ScopeMismatch";
    case Condition::E3_3_DomainMismatch: return "E3_3_DomainMismatch";
    case Condition::PrivateTopLevelUse: return "PrivateTopLevelUse";
    case Condition::CardinalityViolation: return "CardinalityViolation";
    case Condition::UnknownSubtagName: return "UnknownSubtagName";
    case Condition::DuplicateTagWarning: return "DuplicateTagWarning";
    case Condition::UnknownScopeKeyword: return "UnknownScopeKeyword";
    case Condition::UnresolvedNamedReference: return "UnresolvedNamedReference";
    case Condition::RecursiveRequiredReference: return "RecursiveRequiredReference";
    case Condition::DuplicateTransitionWarning: return "DuplicateTransitionWarning";
  }
  return "Unknown";
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

bool has_errors(std::span<const Diagnostic> diagnostics) { return error_count(diagnostics) > 0; }

std::size_t error_count(std::span<const Diagnostic> diagnostics) {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

std::string format_diagnostic(const Diagnostic& d, bool color) {
  std::string out = (d.file.empty() ? "<input>" : d.file) + ":" + std::to_string(d.where.line) + ":" +
                    std::to_string(d.where.column) + ": ";
  std::string severity(to_string(d.severity));
  if (color) severity = (d.severity == Severity::Error ? "\x1b[31m" : "\x1b[33m") + severity + "\x1b[0m";
  out += severity + "[" + std::string(to_string(d.condition)) + "]: " + d.message;
  return out;
}

}  // namespace tagweaver
