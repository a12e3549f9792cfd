#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tagweaver/derivation.hpp"
#include "tagweaver/source.hpp"

namespace tagweaver {

/// Addresses one element of the target model: either a dot-separated
/// qualified name or a bracketed concrete-syntax fragment.
struct ElementIdentifier {
  enum class Kind { QualifiedName, Bracket };

  Kind kind = Kind::QualifiedName;
  std::vector<std::string> path;  // QualifiedName
  std::string raw_text;           // Bracket: content between `[` and `]`, trimmed
  /// Bracket: nonterminals whose identifier rule accepts raw_text, most specific first.
  std::vector<std::string> bracket_rules;
  SourceLocation where;

  static ElementIdentifier qualified(std::vector<std::string> path, SourceLocation where = {});
  static ElementIdentifier bracket(std::string raw_text, std::vector<std::string> rules, SourceLocation where = {});

  /// Source spelling: `Active.Call` or `[Start -> Active]`.
  std::string str() const;

  bool operator==(const ElementIdentifier&) const = default;
};

struct TagUse;

struct SimpleValue {
  bool operator==(const SimpleValue&) const = default;
};

/// `Name = "raw"`; raw holds the unescaped literal content.
struct ValuedValue {
  std::string raw;
  bool operator==(const ValuedValue&) const = default;
};

struct ComplexValue {
  std::vector<TagUse> subtags;
  bool operator==(const ComplexValue& other) const;
};

using TagValue = std::variant<SimpleValue, ValuedValue, ComplexValue>;

struct TagUse {
  std::string name;
  TagValue value;
  SourceLocation where;

  bool operator==(const TagUse&) const = default;
};

inline bool ComplexValue::operator==(const ComplexValue& other) const { return subtags == other.subtags; }

/// `tag e1, e2 with t1, t2;`
struct TagStatement {
  std::vector<ElementIdentifier> elements;
  std::vector<TagUse> tags;
  SourceLocation where;

  bool operator==(const TagStatement&) const = default;
};

struct BodyItem;

/// `within e { ... }`
struct Context {
  ElementIdentifier identifier;
  std::vector<BodyItem> body;
  SourceLocation where;

  bool operator==(const Context& other) const;
};

struct BodyItem {
  std::variant<Context, TagStatement> node;

  bool operator==(const BodyItem&) const = default;
};

inline bool Context::operator==(const Context& other) const {
  return identifier == other.identifier && body == other.body;
}

struct QualifiedRef {
  std::string name;
  SourceLocation where;

  bool operator==(const QualifiedRef&) const = default;
};

struct TagModel {
  std::string package;
  std::vector<QualifiedRef> conforms_to;
  std::string name;
  QualifiedRef target_model;
  std::vector<BodyItem> body;

  std::string qualified_name() const;

  bool operator==(const TagModel&) const = default;
};

/// Parses a `.tag` document. Bracket identifiers are accepted only when one of
/// the profile's bracket rules matches them. Throws tagweaver::Error.
TagModel parse_tag_model(std::string_view source_text, const LanguageProfile& profile);

/// Canonical text form; re-parses to an equal model.
std::string print_tag_model(const TagModel& model);

std::string print_tag_use(const TagUse& tag);

}  // namespace tagweaver
