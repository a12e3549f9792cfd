#include "tagweaver/derivation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tagweaver/error.hpp"

namespace tagweaver {
namespace {

bool match_from(const std::vector<SketchToken>& pattern, std::size_t pi, const std::vector<Token>& tokens,
                std::size_t ti) {
  if (pi == pattern.size()) return ti == tokens.size();
  const SketchToken& p = pattern[pi];
  if (!p.placeholder()) {
    return ti < tokens.size() && tokens[ti].kind != TokenKind::String && tokens[ti].text == p.text &&
           match_from(pattern, pi + 1, tokens, ti + 1);
  }
  for (std::size_t k = ti + 1; k <= tokens.size(); ++k) {
    if (match_from(pattern, pi + 1, tokens, k)) return true;
  }
  return false;
}

std::vector<SketchToken> bracket_pattern(const Production& p) {
  std::map<std::string, std::string, std::less<>> placeholders;
  for (const auto& ref : p.rhs_refs()) {
    placeholders.emplace(ref.nonterminal, ref.nonterminal);
    if (ref.preceding_identifier) placeholders[*ref.preceding_identifier] = ref.nonterminal;
  }
  std::vector<SketchToken> pattern;
  if (p.concrete_syntax_sketch) {
    for (const Token& tok : tokenize(*p.concrete_syntax_sketch)) {
      auto it = placeholders.find(tok.text);
      if (tok.kind == TokenKind::Identifier && it != placeholders.end()) {
        pattern.push_back({tok.text, it->second});
      } else {
        pattern.push_back({tok.text, std::nullopt});
      }
    }
    return pattern;
  }
  for (const auto& e : p.rhs) {
    if (const auto* t = std::get_if<Terminal>(&e)) {
      pattern.push_back({t->text, std::nullopt});
    } else {
      const auto& ref = std::get<RhsRef>(e);
      pattern.push_back({ref.preceding_identifier.value_or(ref.nonterminal), ref.nonterminal});
    }
  }
  return pattern;
}

std::string sketch_text(const std::vector<SketchToken>& pattern) {
  std::string out = "[";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i) out += " ";
    out += pattern[i].text;
  }
  return out + "]";
}

}  // namespace

std::string_view to_string(IdentifierKind kind) {
  return kind == IdentifierKind::QualifiedName ? "QualifiedName" : "BracketSyntax";
}

bool IdentifierRule::matches(const std::vector<Token>& content) const {
  if (kind != IdentifierKind::BracketSyntax) return false;
  return match_from(pattern, 0, content, 0);
}

bool IdentifierRule::matches(std::string_view bracket_content) const {
  if (kind != IdentifierKind::BracketSyntax) return false;
  try {
    return matches(tokenize(bracket_content));
  } catch (const Error&) {
    return false;
  }
}

std::size_t IdentifierRule::literal_count() const {
  return static_cast<std::size_t>(
      std::count_if(pattern.begin(), pattern.end(), [](const SketchToken& t) { return !t.placeholder(); }));
}

const ScopeKeyword* LanguageProfile::find_scope(std::string_view spelling) const {
  for (const auto& k : scope_keywords) {
    if (k.keyword == spelling) return &k;
    if (std::find(k.aliases.begin(), k.aliases.end(), spelling) != k.aliases.end()) return &k;
  }
  return nullptr;
}

std::optional<std::string> LanguageProfile::canonical_scope(std::string_view spelling) const {
  if (const auto* k = find_scope(spelling)) return k->keyword;
  return std::nullopt;
}

const IdentifierRule* LanguageProfile::find_rule(std::string_view nonterminal) const {
  auto it = std::find_if(identifier_rules.begin(), identifier_rules.end(),
                         [&](const IdentifierRule& r) { return r.nonterminal == nonterminal; });
  return it == identifier_rules.end() ? nullptr : &*it;
}

std::vector<std::string> LanguageProfile::matching_bracket_rules(std::string_view bracket_content) const {
  std::vector<Token> tokens;
  try {
    tokens = tokenize(bracket_content);
  } catch (const Error&) {
    return {};
  }
  std::vector<const IdentifierRule*> hits;
  for (const auto& rule : identifier_rules) {
    if (rule.matches(tokens)) hits.push_back(&rule);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const IdentifierRule* a, const IdentifierRule* b) {
    return a->literal_count() > b->literal_count();
  });
  std::vector<std::string> names;
  for (const auto* r : hits) names.push_back(r->nonterminal);
  return names;
}

LanguageProfile derive_profile(const GrammarManifest& manifest) {
  std::vector<const Production*> derivable;
  for (const auto& p : manifest.productions) {
    if (!p.skipped) derivable.push_back(&p);
  }
  if (derivable.empty()) {
    throw Error(ErrorCode::SkippedEverything,
                "grammar '" + manifest.grammar_name + "' has no production that takes part in derivation");
  }

  LanguageProfile profile;
  profile.grammar_name = manifest.grammar_name;

  for (const Production* p : derivable) {
    IdentifierRule rule;
    rule.nonterminal = p->name;
    if (p->name_identifiable) {
      rule.kind = IdentifierKind::QualifiedName;
    } else {
      rule.kind = IdentifierKind::BracketSyntax;
      rule.pattern = bracket_pattern(*p);
      rule.syntax_sketch = sketch_text(rule.pattern);
    }
    profile.identifier_rules.push_back(std::move(rule));
  }

  for (const Production* p : derivable) {
    ScopeKeyword k{p->name, ScopeOrigin::Plain, p->name, std::nullopt, {}};
    if (p->alias) k.aliases.push_back(*p->alias);
    profile.scope_keywords.push_back(std::move(k));
  }

  // A bare preceding identifier is only safe when nothing else in the grammar
  // is spelled the same way.
  std::set<std::string, std::less<>> taken;
  for (const auto& p : manifest.productions) {
    taken.insert(p.name);
    if (p.alias) taken.insert(*p.alias);
  }
  for (const auto& i : manifest.interfaces) taken.insert(i.name);
  std::map<std::string, int, std::less<>> label_use;
  for (const auto& p : manifest.productions) {
    for (const auto& pi : p.preceding_identifiers()) ++label_use[pi];
  }

  for (const Production* st : derivable) {
    std::map<std::string, int, std::less<>> occurrences;
    const auto refs = st->rhs_refs();
    for (const auto& ref : refs) ++occurrences[ref.nonterminal];
    for (const auto& ref : refs) {
      if (!ref.preceding_identifier || occurrences[ref.nonterminal] < 2) continue;
      const std::string& pi = *ref.preceding_identifier;
      bool bare = label_use[pi] == 1 && !taken.contains(pi);
      profile.scope_keywords.push_back({bare ? pi : st->name + "_" + pi, ScopeOrigin::Nested, st->name, pi, {}});
    }
  }

  std::set<std::string, std::less<>> spelled;
  for (const auto& k : profile.scope_keywords) {
    if (!spelled.insert(k.keyword).second) {
      throw Error(ErrorCode::ScopeKeywordCollision, "scope keyword '" + k.keyword + "' is derived more than once");
    }
    for (const auto& a : k.aliases) {
      if (!spelled.insert(a).second) {
        throw Error(ErrorCode::ScopeKeywordCollision, "alias '" + a + "' collides with another scope keyword");
      }
    }
  }
  return profile;
}

std::string render_derived_grammar(const LanguageProfile& profile) {
  std::string out = "// Derived tagging languages for grammar " + profile.grammar_name + "\n\n";

  out += "grammar " + profile.grammar_name + "Tag extends Tags, " + profile.grammar_name + " {\n";
  std::string defaults;
  for (const auto& r : profile.identifier_rules) {
    if (r.kind != IdentifierKind::QualifiedName) continue;
    defaults += (defaults.empty() ? "" : ", ") + r.nonterminal;
  }
  if (!defaults.empty()) out += "  // DefaultIdent (QualifiedName) identifies: " + defaults + "\n";
  for (const auto& r : profile.identifier_rules) {
    if (r.kind != IdentifierKind::BracketSyntax) continue;
    out += "  I_" + r.nonterminal + " implements ModelElementIdentifier = \"[\"";
    for (const auto& t : r.pattern) {
      if (!t.placeholder()) {
        out += " " + quote(t.text);
      } else if (t.text == *t.nonterminal) {
        out += " " + t.text;
      } else {
        out += " " + t.text + ":" + *t.nonterminal;
      }
    }
    out += " \"]\";\n";
  }
  out += "}\n\n";

  out += "grammar " + profile.grammar_name + "TagSchema extends TagSchema {\n";
  out += "  // element types\n";
  for (const auto& k : profile.scope_keywords) {
    if (k.origin != ScopeOrigin::Plain) continue;
    out += "  SI_" + k.keyword + " implements ScopeIdentifier = " + quote(k.keyword);
    for (const auto& a : k.aliases) out += " | " + quote(a);
    out += ";\n";
  }
  bool nested_header = false;
  for (const auto& k : profile.scope_keywords) {
    if (k.origin != ScopeOrigin::Nested) continue;
    if (!nested_header) {
      out += "  // nested element types (preceding identifiers)\n";
      nested_header = true;
    }
    out += "  SI_" + k.keyword + " implements ScopeIdentifier = " + quote(k.keyword) + ";\n";
  }
  out += "}\n";
  return out;
}

const LanguageProfile& statechart_profile() {
  static const LanguageProfile profile = derive_profile(parse_manifest(statechart_manifest_text()));
  return profile;
}

}  // namespace tagweaver
