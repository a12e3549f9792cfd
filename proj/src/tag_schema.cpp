#include "tagweaver/tag_schema.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tagweaver/error.hpp"
#include "tagweaver/lexer.hpp"

namespace tagweaver {
namespace {

std::optional<NativeType> native_keyword(std::string_view s) {
  if (s == "int") return NativeType::Int;
  if (s == "String") return NativeType::String;
  if (s == "Boolean") return NativeType::Boolean;
  return std::nullopt;
}

class SchemaParser {
 public:
  explicit SchemaParser(std::string_view text) : lex_(text) {}

  TagSchema parse() {
    TagSchema schema;
    if (lex_.accept("package")) {
      schema.package = lex_.qualified_name("package name");
      lex_.expect(";");
    }
    lex_.expect("tagschema");
    schema.name = lex_.expect_identifier("schema name").text;
    lex_.expect("{");
    while (!lex_.peek().is_punct("}")) schema.tag_types.push_back(tag_type());
    lex_.expect("}");
    if (!lex_.peek().is_end()) lex_.fail(lex_.peek(), "expected end of input");
    return schema;
  }

 private:
  TagTypeDef tag_type() {
    TagTypeDef tt;
    tt.where = lex_.here();
    tt.is_private = lex_.accept("private");
    lex_.expect("tagtype");
    tt.name = lex_.expect_identifier("tag type name").text;

    if (lex_.accept(":")) {
      if (lex_.peek().is_punct("[")) {
        tt.domain = enumeration(tt.name);
      } else {
        Token kw = lex_.expect_identifier("'int', 'String', 'Boolean' or '['");
        auto native = native_keyword(kw.text);
        if (!native) lex_.fail(kw, "expected 'int', 'String', 'Boolean' or '['");
        tt.domain = NativeDomain{*native};
      }
      tt.scope = scope();
      lex_.expect(";");
      return tt;
    }

    tt.scope = scope();
    if (lex_.accept(";")) {
      tt.domain = SimpleFlag{};
      return tt;
    }
    lex_.expect("{");
    ComplexDomain complex;
    std::set<std::string, std::less<>> names;
    do {
      Reference ref = reference();
      if (!names.insert(ref.name).second) {
        throw Error(ErrorCode::DuplicateReferenceName,
                    "reference '" + ref.name + "' is declared twice in tag type '" + tt.name + "'", ref.where);
      }
      complex.references.push_back(std::move(ref));
    } while (lex_.accept(","));
    lex_.expect(";");
    lex_.expect("}");
    tt.domain = std::move(complex);
    return tt;
  }

  EnumDomain enumeration(const std::string& type_name) {
    SourceLocation open = lex_.expect("[").where;
    if (lex_.peek().is_punct("]")) {
      throw Error(ErrorCode::EmptyEnumDomain, "enumerated tag type '" + type_name + "' has no values", open);
    }
    EnumDomain domain;
    do {
      Token value = lex_.expect_string("enumeration value");
      if (std::find(domain.values.begin(), domain.values.end(), value.text) != domain.values.end()) {
        throw Error(ErrorCode::EmptyEnumDomain,
                    "enumeration value \"" + value.text + "\" is listed twice in tag type '" + type_name + "'",
                    value.where);
      }
      domain.values.push_back(value.text);
    } while (lex_.accept("|"));
    lex_.expect("]");
    return domain;
  }

  ScopeSpec scope() {
    ScopeSpec spec;
    if (!lex_.accept("for")) return spec;
    if (lex_.accept("+")) return spec;
    do {
      Token kw = lex_.expect_identifier("scope keyword or '+'");
      spec.keywords.push_back({kw.text, kw.where});
    } while (lex_.accept(","));
    return spec;
  }

  Reference reference() {
    Reference ref;
    Token name = lex_.expect_identifier("reference name");
    ref.name = name.text;
    ref.where = name.where;
    lex_.expect(":");
    Token type = lex_.expect_identifier("reference type");
    ref.type.native = native_keyword(type.text);
    if (!ref.type.native) ref.type.named = type.text;
    if (lex_.accept("?")) {
      ref.cardinality = Cardinality::Optional;
    } else if (lex_.accept("*")) {
      ref.cardinality = Cardinality::Many;
    } else if (lex_.accept("+")) {
      ref.cardinality = Cardinality::AtLeastOne;
    }
    return ref;
  }

  Lexer lex_;
};

ErrorCode error_code_for(Condition c) {
  switch (c) {
    case Condition::E2_DuplicateTagTypeName: return ErrorCode::DuplicateTagTypeName;
    case Condition::UnknownScopeKeyword: return ErrorCode::UnknownScopeKeyword;
    case Condition::UnresolvedNamedReference: return ErrorCode::UnresolvedNamedReference;
    case Condition::RecursiveRequiredReference: return ErrorCode::RecursiveRequiredReference;
    default: return ErrorCode::ParseError;
  }
}

/// Reports every edge that closes a cycle of Required/AtLeastOne references.
void find_required_cycles(const TagSchema& schema, std::vector<Diagnostic>& out) {
  const auto n = schema.tag_types.size();
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(schema.tag_types[i].name, i);

  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  auto visit = [&](auto&& self, std::size_t v) -> void {
    state[v] = 1;
    const auto* complex = std::get_if<ComplexDomain>(&schema.tag_types[v].domain);
    if (complex) {
      for (const auto& ref : complex->references) {
        if (ref.type.native) continue;
        if (ref.cardinality != Cardinality::Required && ref.cardinality != Cardinality::AtLeastOne) continue;
        auto it = index.find(ref.type.named);
        if (it == index.end()) continue;
        if (state[it->second] == 1) {
          out.push_back({Condition::RecursiveRequiredReference, Severity::Error, ref.where,
                         "tag type '" + schema.tag_types[v].name + "' requires '" + ref.name + "' of type '" +
                             ref.type.named + "', which closes a cycle of required references; no finite value exists",
                         {}});
        } else if (state[it->second] == 0) {
          self(self, it->second);
        }
      }
    }
    state[v] = 2;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (state[i] == 0) visit(visit, i);
  }
}

}  // namespace

std::string_view to_string(NativeType t) {
  switch (t) {
    case NativeType::Int: return "int";
    case NativeType::String: return "String";
    case NativeType::Boolean: return "Boolean";
  }
  return "";
}

std::string TagSchema::qualified_name() const { return package.empty() ? name : package + "." + name; }

const TagTypeDef* TagSchema::find(std::string_view type_name) const {
  auto it = std::find_if(tag_types.begin(), tag_types.end(), [&](const TagTypeDef& t) { return t.name == type_name; });
  return it == tag_types.end() ? nullptr : &*it;
}

TagSchema parse_tag_schema_syntax(std::string_view source_text) { return SchemaParser(source_text).parse(); }

TagSchema parse_tag_schema(std::string_view source_text, const LanguageProfile& profile) {
  TagSchema schema = parse_tag_schema_syntax(source_text);
  auto diagnostics = validate_schema_well_formedness(schema, profile);
  if (!diagnostics.empty()) {
    const Diagnostic& first = diagnostics.front();
    throw Error(error_code_for(first.condition), first.message, first.where);
  }
  return schema;
}

std::vector<Diagnostic> validate_schema_well_formedness(const TagSchema& schema, const LanguageProfile& profile) {
  std::vector<Diagnostic> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& tt : schema.tag_types) {
    if (!seen.insert(tt.name).second) {
      out.push_back({Condition::E2_DuplicateTagTypeName, Severity::Error, tt.where,
                     "tag type '" + tt.name + "' is defined more than once in schema " + schema.qualified_name(),
                     {}});
    }
    for (const auto& kw : tt.scope.keywords) {
      if (!profile.find_scope(kw.name)) {
        out.push_back({Condition::UnknownScopeKeyword, Severity::Error, kw.where,
                       "'" + kw.name + "' is not a scope keyword of language " + profile.grammar_name, {}});
      }
    }
    if (const auto* complex = std::get_if<ComplexDomain>(&tt.domain)) {
      for (const auto& ref : complex->references) {
        if (!ref.type.native && !schema.find(ref.type.named)) {
          out.push_back({Condition::UnresolvedNamedReference, Severity::Error, ref.where,
                         "reference '" + ref.name + "' of tag type '" + tt.name + "' names unknown tag type '" +
                             ref.type.named + "'",
                         {}});
        }
      }
    }
  }
  find_required_cycles(schema, out);
  return out;
}

std::string print_tag_schema(const TagSchema& schema) {
  std::string out;
  if (!schema.package.empty()) out += "package " + schema.package + ";\n\n";
  out += "tagschema " + schema.name + " {\n";
  for (const auto& tt : schema.tag_types) {
    out += "    ";
    if (tt.is_private) out += "private ";
    out += "tagtype " + tt.name;
    std::string scope;
    if (!tt.scope.any()) {
      scope = " for ";
      for (std::size_t i = 0; i < tt.scope.keywords.size(); ++i) scope += (i ? ", " : "") + tt.scope.keywords[i].name;
    }
    std::visit(
        [&](const auto& d) {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, SimpleFlag>) {
            out += scope + ";\n";
          } else if constexpr (std::is_same_v<D, NativeDomain>) {
            out += ":" + std::string(to_string(d.type)) + scope + ";\n";
          } else if constexpr (std::is_same_v<D, EnumDomain>) {
            out += ":[";
            for (std::size_t i = 0; i < d.values.size(); ++i) out += (i ? "|" : "") + quote(d.values[i]);
            out += "]" + scope + ";\n";
          } else {
            out += scope + " {\n";
            for (std::size_t i = 0; i < d.references.size(); ++i) {
              const auto& ref = d.references[i];
              out += "        " + ref.name + ":" +
                     (ref.type.native ? std::string(to_string(*ref.type.native)) : ref.type.named) +
                     std::string(suffix(ref.cardinality)) + (i + 1 < d.references.size() ? ",\n" : ";\n");
            }
            out += "    }\n";
          }
        },
        tt.domain);
  }
  out += "}\n";
  return out;
}

}  // namespace tagweaver
