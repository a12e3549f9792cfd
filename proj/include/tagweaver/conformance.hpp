#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tagweaver/derivation.hpp"
#include "tagweaver/diagnostic.hpp"
#include "tagweaver/statechart.hpp"
#include "tagweaver/tag_model.hpp"
#include "tagweaver/tag_schema.hpp"

namespace tagweaver {

struct NamedValue;

struct FlagValue {
  bool operator==(const FlagValue&) const = default;
};
struct StringValue {
  std::string text;
  bool operator==(const StringValue&) const = default;
};
struct EnumChoice {
  std::string text;
  bool operator==(const EnumChoice&) const = default;
};
struct ComplexChildren {
  std::vector<NamedValue> children;
  bool operator==(const ComplexChildren& other) const;
};

/// A tag value interpreted against its tag type's domain.
using NormalizedValue = std::variant<FlagValue, std::int64_t, bool, StringValue, EnumChoice, ComplexChildren>;

struct NamedValue {
  std::string name;
  /// The reference admits several occurrences (`*` or `+`).
  bool repeated = false;
  NormalizedValue value;

  bool operator==(const NamedValue&) const = default;
};

inline bool ComplexChildren::operator==(const ComplexChildren& other) const { return children == other.children; }

/// Compact single-line rendering, e.g. `{type="X", msg="Y"}`. Stable; used in
/// messages and duplicate detection.
std::string describe(const NormalizedValue& value);

struct CheckInput {
  const TagModel& tag_model;
  const StatechartModel& target;
  std::span<const TagSchema> schemas;
  const LanguageProfile& profile;
};

struct Attachment {
  ElementHandle element;
  TagTypeDef tag_type;
  std::string schema;  // qualified name of the defining schema
  NormalizedValue value;
  SourceLocation where;  // the tag use in the tag model

  bool operator==(const Attachment&) const = default;
};

struct ResolvedTagging {
  std::string target_model;
  std::vector<Attachment> attachments;
};

struct CheckResult {
  std::vector<Diagnostic> diagnostics;
  /// Present iff no diagnostic has error severity.
  std::optional<ResolvedTagging> resolved;
};

/// Checks a tag model against its target model and the union of its schemas.
/// Every finding is reported as a Diagnostic; nothing throws.
///
/// Statements are expanded to (element, tag) pairs with context paths
/// accumulated through `within` blocks. Per pair: an unresolved element
/// suppresses the remaining checks, as does an unknown tag type; scope,
/// value domain and privacy are then checked independently.
CheckResult check(const CheckInput& input);

struct DomainCheck {
  std::vector<Diagnostic> diagnostics;
  std::optional<NormalizedValue> value;
};

/// Interprets `value` against the domain of `tag_type` (a member of `schema`).
/// Named references in complex types resolve within `schema`; their scopes
/// are not consulted.
DomainCheck check_value_domain(const TagValue& value, const TagTypeDef& tag_type, const TagSchema& schema,
                               SourceLocation where = {});

}  // namespace tagweaver
