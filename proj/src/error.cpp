#include "tagweaver/error.hpp"

namespace tagweaver {

std::string SourceLocation::str() const {
  return std::to_string(line) + ":" + std::to_string(column);
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateProduction: return "DuplicateProduction";
    case ErrorCode::UnknownNonterminalReference: return "UnknownNonterminalReference";
    case ErrorCode::MissingPrecedingIdentifier: return "MissingPrecedingIdentifier";
    case ErrorCode::DuplicatePrecedingIdentifier: return "DuplicatePrecedingIdentifier";
    case ErrorCode::SkippedEverything: return "SkippedEverything";
    case ErrorCode::ScopeKeywordCollision: return "ScopeKeywordCollision";
    case ErrorCode::UnknownIdentifierForm: return "UnknownIdentifierForm";
    case ErrorCode::MissingConformsTo: return "MissingConformsTo";
    case ErrorCode::DuplicateTagTypeName: return "DuplicateTagTypeName";
    case ErrorCode::UnknownScopeKeyword: return "UnknownScopeKeyword";
    case ErrorCode::UnresolvedNamedReference: return "UnresolvedNamedReference";
    case ErrorCode::EmptyEnumDomain: return "EmptyEnumDomain";
    case ErrorCode::DuplicateReferenceName: return "DuplicateReferenceName";
    case ErrorCode::RecursiveRequiredReference: return "RecursiveRequiredReference";
    case ErrorCode::DuplicateSiblingState: return "DuplicateSiblingState";
    case ErrorCode::UnresolvedTransitionEndpoint: return "UnresolvedTransitionEndpoint";
    case ErrorCode::InvalidModifiers: return "InvalidModifiers";
    case ErrorCode::UnresolvedElement: return "UnresolvedElement";
    case ErrorCode::AmbiguousElement: return "AmbiguousElement";
    case ErrorCode::AmbiguousTransition: return "AmbiguousTransition";
    case ErrorCode::UnknownSchema: return "UnknownSchema";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::AmbiguousReference: return "AmbiguousReference";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format(ErrorCode code, const std::string& message, const SourceLocation& where,
                   const std::string& file) {
  std::string out;
  if (!file.empty()) out = file + ":";
  if (where.known()) out += where.str() + ":";
  if (!out.empty()) out += " ";
  out += std::string(to_string(code)) + ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, SourceLocation where, std::string file)
    : std::runtime_error(format(code, message, where, file)),
      code_(code),
      where_(where),
      detail_(std::move(message)),
      file_(std::move(file)) {}

}  // namespace tagweaver
