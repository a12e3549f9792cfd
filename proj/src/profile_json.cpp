#include "tagweaver/profile_json.hpp"

#include <json.hpp>

#include "tagweaver/error.hpp"

namespace tagweaver {

using nlohmann::ordered_json;

std::string serialize_profile(const LanguageProfile& profile) {
  ordered_json doc;
  doc["grammar"] = profile.grammar_name;
  doc["identifierRules"] = ordered_json::array();
  for (const auto& rule : profile.identifier_rules) {
    ordered_json r;
    r["nonterminal"] = rule.nonterminal;
    r["kind"] = std::string(to_string(rule.kind));
    if (rule.kind == IdentifierKind::BracketSyntax) {
      r["syntax"] = rule.syntax_sketch;
      r["pattern"] = ordered_json::array();
      for (const auto& t : rule.pattern) {
        ordered_json tok;
        tok["text"] = t.text;
        if (t.nonterminal) tok["nonterminal"] = *t.nonterminal;
        r["pattern"].push_back(std::move(tok));
      }
    }
    doc["identifierRules"].push_back(std::move(r));
  }
  doc["scopeKeywords"] = ordered_json::array();
  for (const auto& k : profile.scope_keywords) {
    ordered_json j;
    j["keyword"] = k.keyword;
    j["origin"] = k.origin == ScopeOrigin::Plain ? "plain" : "nested";
    j["nonterminal"] = k.nonterminal;
    if (k.preceding_identifier) j["precedingIdentifier"] = *k.preceding_identifier;
    if (!k.aliases.empty()) j["aliases"] = k.aliases;
    doc["scopeKeywords"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

LanguageProfile parse_profile(std::string_view json_text) {
  try {
    auto doc = nlohmann::json::parse(json_text);
    LanguageProfile profile;
    profile.grammar_name = doc.at("grammar").get<std::string>();
    for (const auto& r : doc.at("identifierRules")) {
      IdentifierRule rule;
      rule.nonterminal = r.at("nonterminal").get<std::string>();
      auto kind = r.at("kind").get<std::string>();
      if (kind == "QualifiedName") {
        rule.kind = IdentifierKind::QualifiedName;
      } else if (kind == "BracketSyntax") {
        rule.kind = IdentifierKind::BracketSyntax;
        rule.syntax_sketch = r.at("syntax").get<std::string>();
        for (const auto& t : r.at("pattern")) {
          SketchToken tok{t.at("text").get<std::string>(), std::nullopt};
          if (t.contains("nonterminal")) tok.nonterminal = t.at("nonterminal").get<std::string>();
          rule.pattern.push_back(std::move(tok));
        }
      } else {
        throw Error(ErrorCode::InvalidProfile, "unknown identifier rule kind '" + kind + "'");
      }
      profile.identifier_rules.push_back(std::move(rule));
    }
    for (const auto& j : doc.at("scopeKeywords")) {
      ScopeKeyword k;
      k.keyword = j.at("keyword").get<std::string>();
      auto origin = j.at("origin").get<std::string>();
      if (origin != "plain" && origin != "nested") {
        throw Error(ErrorCode::InvalidProfile, "unknown scope keyword origin '" + origin + "'");
      }
      k.origin = origin == "plain" ? ScopeOrigin::Plain : ScopeOrigin::Nested;
      k.nonterminal = j.at("nonterminal").get<std::string>();
      if (j.contains("precedingIdentifier")) k.preceding_identifier = j.at("precedingIdentifier").get<std::string>();
      if (j.contains("aliases")) k.aliases = j.at("aliases").get<std::vector<std::string>>();
      profile.scope_keywords.push_back(std::move(k));
    }
    return profile;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidProfile, e.what());
  }
}

}  // namespace tagweaver
