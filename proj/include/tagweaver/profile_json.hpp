#pragma once

#include <string>
#include <string_view>

#include "tagweaver/derivation.hpp"

namespace tagweaver {

/// `.profile.json` sidecar written by `derive` and accepted wherever a
/// manifest is. Layout:
///
///   { "grammar": "Statechart",
///     "identifierRules": [ { "nonterminal": "State", "kind": "QualifiedName" },
///                          { "nonterminal": "Transition", "kind": "BracketSyntax",
///                            "syntax": "[source -> target]",
///                            "pattern": [ { "text": "source", "nonterminal": "Name" },
///                                         { "text": "->" }, ... ] } ],
///     "scopeKeywords": [ { "keyword": "SCDefinition", "origin": "plain",
///                          "nonterminal": "SCDefinition", "aliases": ["Statechart"] },
///                        { "keyword": "source", "origin": "nested",
///                          "nonterminal": "Transition", "precedingIdentifier": "source" } ] }
std::string serialize_profile(const LanguageProfile& profile);

/// Throws Error(InvalidProfile) on malformed documents.
LanguageProfile parse_profile(std::string_view json_text);

}  // namespace tagweaver
