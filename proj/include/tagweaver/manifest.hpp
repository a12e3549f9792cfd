#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tagweaver/cardinality.hpp"
#include "tagweaver/source.hpp"

namespace tagweaver {

/// A nonterminal occurrence on a production's right-hand side, optionally
/// labelled with a preceding identifier (`source:Name`).
struct RhsRef {
  std::optional<std::string> preceding_identifier;
  std::string nonterminal;
  Cardinality cardinality = Cardinality::Required;

  bool operator==(const RhsRef&) const = default;
};

/// A quoted terminal on a right-hand side. Kept for concrete-syntax sketches only.
struct Terminal {
  std::string text;

  bool operator==(const Terminal&) const = default;
};

using RhsElement = std::variant<Terminal, RhsRef>;

struct Production {
  std::string name;
  bool name_identifiable = false;  // @named
  bool skipped = false;            // @skip
  std::optional<std::string> alias;                   // @alias Keyword
  std::optional<std::string> concrete_syntax_sketch;  // @syntax "..."
  std::vector<RhsElement> rhs;
  bool elided = false;  // right-hand side written as `...`
  SourceLocation where;

  std::vector<RhsRef> rhs_refs() const;
  std::vector<std::string> preceding_identifiers() const;

  bool operator==(const Production&) const = default;
};

struct InterfaceDecl {
  std::string name;
  bool skipped = false;
  SourceLocation where;

  bool operator==(const InterfaceDecl&) const = default;
};

/// Declarative description of a source DSL grammar: just the parts the
/// derivation rules consume.
struct GrammarManifest {
  std::string grammar_name;
  std::vector<Production> productions;
  std::vector<InterfaceDecl> interfaces;
  std::vector<std::string> externals;

  const Production* find_production(std::string_view name) const;
  bool is_interface(std::string_view name) const;

  bool operator==(const GrammarManifest&) const = default;
};

/// Nonterminals every manifest may reference without declaring them.
const std::vector<std::string>& inherited_nonterminals();

/// Parses the line-oriented `.glang` format. Throws tagweaver::Error.
GrammarManifest parse_manifest(std::string_view source_text);

std::string print_manifest(const GrammarManifest& manifest);

/// Manifest of the built-in Statechart language.
std::string_view statechart_manifest_text();

}  // namespace tagweaver
