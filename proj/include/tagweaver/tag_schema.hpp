#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tagweaver/cardinality.hpp"
#include "tagweaver/derivation.hpp"
#include "tagweaver/diagnostic.hpp"
#include "tagweaver/tag_model.hpp"

namespace tagweaver {

enum class NativeType { Int, String, Boolean };

std::string_view to_string(NativeType t);

/// `for k1, k2` lists element types; no keywords (absent scope or `for +`) admits any element.
struct ScopeSpec {
  std::vector<QualifiedRef> keywords;

  bool any() const { return keywords.empty(); }
  bool operator==(const ScopeSpec&) const = default;
};

struct SimpleFlag {
  bool operator==(const SimpleFlag&) const = default;
};

struct NativeDomain {
  NativeType type = NativeType::String;
  bool operator==(const NativeDomain&) const = default;
};

struct EnumDomain {
  std::vector<std::string> values;
  bool operator==(const EnumDomain&) const = default;
};

struct ReferenceType {
  std::optional<NativeType> native;
  std::string named;  // tag type name when not native

  bool operator==(const ReferenceType&) const = default;
};

struct Reference {
  std::string name;
  ReferenceType type;
  Cardinality cardinality = Cardinality::Required;
  SourceLocation where;

  bool operator==(const Reference&) const = default;
};

struct ComplexDomain {
  std::vector<Reference> references;
  bool operator==(const ComplexDomain&) const = default;
};

using DomainSpec = std::variant<SimpleFlag, NativeDomain, EnumDomain, ComplexDomain>;

struct TagTypeDef {
  std::string name;
  bool is_private = false;
  ScopeSpec scope;
  DomainSpec domain;
  SourceLocation where;

  bool operator==(const TagTypeDef&) const = default;
};

struct TagSchema {
  std::string package;
  std::string name;
  std::vector<TagTypeDef> tag_types;

  std::string qualified_name() const;
  const TagTypeDef* find(std::string_view type_name) const;

  bool operator==(const TagSchema&) const = default;
};

/// Syntax-level parse. Rejects malformed text, empty or duplicate enumeration
/// values and duplicate reference names; scope keywords and named references
/// are left unchecked.
TagSchema parse_tag_schema_syntax(std::string_view source_text);

/// Full parse against a language profile: the syntax parse followed by the
/// well-formedness checks, the first failing one thrown as tagweaver::Error.
TagSchema parse_tag_schema(std::string_view source_text, const LanguageProfile& profile);

/// Checks what the grammar cannot express. Empty iff the schema is well formed.
std::vector<Diagnostic> validate_schema_well_formedness(const TagSchema& schema, const LanguageProfile& profile);

std::string print_tag_schema(const TagSchema& schema);

}  // namespace tagweaver
