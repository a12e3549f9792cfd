#pragma once

#include <span>
#include <string>
#include <string_view>

#include "tagweaver/source.hpp"

namespace tagweaver {

/// Condition identifiers. The E-prefixed ones are the tag/schema/model
/// context conditions; the rest are structural checks around them.
enum class Condition {
  E1_UnresolvedElement,
  E2_DuplicateTagTypeName,
  E3_1_UnknownTagType,
  E3_2_ScopeMismatch,
  E3_3_DomainMismatch,
  PrivateTopLevelUse,
  CardinalityViolation,
  UnknownSubtagName,
  DuplicateTagWarning,
  // schema well-formedness
  UnknownScopeKeyword,
  UnresolvedNamedReference,
  RecursiveRequiredReference,
  // statechart models
  DuplicateTransitionWarning,
};

enum class Severity { Error, Warning };

std::string_view to_string(Condition c);
std::string_view to_string(Severity s);

struct Diagnostic {
  Condition condition = Condition::E1_UnresolvedElement;
  Severity severity = Severity::Error;
  SourceLocation where;
  std::string message;
  std::string file;  // filled in by workspace loading; empty for in-memory checks

  bool operator==(const Diagnostic&) const = default;
};

bool has_errors(std::span<const Diagnostic> diagnostics);
std::size_t error_count(std::span<const Diagnostic> diagnostics);

/// `FILE:LINE:COL: SEVERITY[CONDITION_ID]: message`
std::string format_diagnostic(const Diagnostic& d, bool color = false);

}  // namespace tagweaver
