#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagweaver/lexer.hpp"
#include "tagweaver/manifest.hpp"

namespace tagweaver {

enum class IdentifierKind { QualifiedName, BracketSyntax };

std::string_view to_string(IdentifierKind kind);

/// One token of a bracket identifier pattern. Placeholders carry the
/// nonterminal they stand for and match any non-empty token run.
struct SketchToken {
  std::string text;
  std::optional<std::string> nonterminal;

  bool placeholder() const { return nonterminal.has_value(); }
  bool operator==(const SketchToken&) const = default;
};

/// How elements of one nonterminal are addressed from a tag model.
struct IdentifierRule {
  std::string nonterminal;
  IdentifierKind kind = IdentifierKind::QualifiedName;
  /// Human-readable form, e.g. `[source -> target]`. Empty for qualified names.
  std::string syntax_sketch;
  std::vector<SketchToken> pattern;

  /// True if the text between `[` and `]` fits this rule's pattern.
  bool matches(std::string_view bracket_content) const;
  bool matches(const std::vector<Token>& content) const;
  std::size_t literal_count() const;

  bool operator==(const IdentifierRule&) const = default;
};

enum class ScopeOrigin { Plain, Nested };

/// A keyword usable after `for` in a tag schema.
struct ScopeKeyword {
  std::string keyword;
  ScopeOrigin origin = ScopeOrigin::Plain;
  /// Plain: the nonterminal itself. Nested: the production that owns the preceding identifier.
  std::string nonterminal;
  std::optional<std::string> preceding_identifier;
  std::vector<std::string> aliases;

  bool operator==(const ScopeKeyword&) const = default;
};

/// The DSL-specific specialization of the common tag and tagschema languages.
struct LanguageProfile {
  std::string grammar_name;
  std::vector<IdentifierRule> identifier_rules;
  std::vector<ScopeKeyword> scope_keywords;

  /// Looks up a scope keyword by its spelling or one of its aliases.
  const ScopeKeyword* find_scope(std::string_view keyword_or_alias) const;
  /// Canonical keyword for a spelling, if known.
  std::optional<std::string> canonical_scope(std::string_view keyword_or_alias) const;
  const IdentifierRule* find_rule(std::string_view nonterminal) const;
  /// Names of the bracket rules that accept the given content, most specific first.
  std::vector<std::string> matching_bracket_rules(std::string_view bracket_content) const;

  bool operator==(const LanguageProfile&) const = default;
};

/// Applies the identifier and scope-identifier derivation rules to a manifest.
/// Throws Error(SkippedEverything) when no production takes part in derivation
/// and Error(ScopeKeywordCollision) when two keywords would be spelled alike.
LanguageProfile derive_profile(const GrammarManifest& manifest);

/// Stable textual rendering of the derived productions.
std::string render_derived_grammar(const LanguageProfile& profile);

/// Profile of the built-in Statechart language.
const LanguageProfile& statechart_profile();

}  // namespace tagweaver
