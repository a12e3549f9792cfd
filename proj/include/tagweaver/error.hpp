#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tagweaver/source.hpp"

namespace tagweaver {

enum class ErrorCode {
  ParseError,
  // grammar manifests
  DuplicateProduction,
  UnknownNonterminalReference,
  MissingPrecedingIdentifier,
  DuplicatePrecedingIdentifier,
  // derivation
  SkippedEverything,
  ScopeKeywordCollision,
  // tag models
  UnknownIdentifierForm,
  MissingConformsTo,
  // tag schemas
  DuplicateTagTypeName,
  UnknownScopeKeyword,
  UnresolvedNamedReference,
  EmptyEnumDomain,
  DuplicateReferenceName,
  RecursiveRequiredReference,
  // statecharts
  DuplicateSiblingState,
  UnresolvedTransitionEndpoint,
  InvalidModifiers,
  UnresolvedElement,
  AmbiguousElement,
  AmbiguousTransition,
  // workspace
  UnknownSchema,
  UnknownModel,
  AmbiguousReference,
  InvalidProfile,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Raised by every parser and loader in the library. Carries a machine-readable
/// code and, when the failure is tied to input text, the offending location.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, SourceLocation where = {}, std::string file = {});

  /// Same error, attributed to a file.
  Error in_file(std::string file) const { return Error(code_, detail_, where_, std::move(file)); }

  ErrorCode code() const noexcept { return code_; }
  const SourceLocation& where() const noexcept { return where_; }
  /// Message without location prefix.
  const std::string& detail() const noexcept { return detail_; }
  const std::string& file() const noexcept { return file_; }

 private:
  ErrorCode code_;
  SourceLocation where_;
  std::string detail_;
  std::string file_;
};

}  // namespace tagweaver
