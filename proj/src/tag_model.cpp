#include "tagweaver/tag_model.hpp"

#include "tagweaver/error.hpp"
#include "tagweaver/lexer.hpp"

namespace tagweaver {
namespace {

class TagModelParser {
 public:
  TagModelParser(std::string_view text, const LanguageProfile& profile) : lex_(text), profile_(profile) {}

  TagModel parse() {
    TagModel model;
    if (lex_.accept("package")) {
      model.package = lex_.qualified_name("package name");
      lex_.expect(";");
    }
    if (lex_.peek().is_keyword("tags")) {
      throw Error(ErrorCode::MissingConformsTo, "tag model must declare 'conforms to' with at least one schema",
                  lex_.here());
    }
    lex_.expect("conforms");
    lex_.expect("to");
    do {
      SourceLocation at = lex_.here();
      model.conforms_to.push_back({lex_.qualified_name("schema name"), at});
    } while (lex_.accept(","));
    lex_.expect(";");

    lex_.expect("tags");
    model.name = lex_.expect_identifier("tag model name").text;
    lex_.expect("for");
    model.target_model.where = lex_.here();
    model.target_model.name = lex_.qualified_name("target model name");
    lex_.expect("{");
    model.body = body();
    lex_.expect("}");
    if (!lex_.peek().is_end()) lex_.fail(lex_.peek(), "expected end of input");
    return model;
  }

 private:
  std::vector<BodyItem> body() {
    std::vector<BodyItem> items;
    for (;;) {
      const Token& tok = lex_.peek();
      if (tok.is_keyword("within")) {
        Context ctx;
        ctx.where = lex_.next().where;
        ctx.identifier = identifier();
        lex_.expect("{");
        ctx.body = body();
        lex_.expect("}");
        items.push_back({std::move(ctx)});
      } else if (tok.is_keyword("tag")) {
        items.push_back({statement()});
      } else if (tok.is_punct("...")) {
        lex_.next();  // elided content in excerpts
      } else {
        return items;
      }
    }
  }

  TagStatement statement() {
    TagStatement st;
    st.where = lex_.expect("tag").where;
    do {
      st.elements.push_back(identifier());
    } while (lex_.accept(","));
    lex_.expect("with");
    do {
      st.tags.push_back(tag());
    } while (lex_.accept(","));
    lex_.expect(";");
    return st;
  }

  ElementIdentifier identifier() {
    const Token& tok = lex_.peek();
    if (tok.is_punct("[")) {
      SourceLocation at = lex_.next().where;
      std::string raw = lex_.raw_until_matching('[', ']', at);
      auto rules = profile_.matching_bracket_rules(raw);
      if (rules.empty()) {
        throw Error(ErrorCode::UnknownIdentifierForm,
                    "'[" + raw + "]' matches no bracket identifier of language " + profile_.grammar_name, at);
      }
      return ElementIdentifier::bracket(std::move(raw), std::move(rules), at);
    }
    if (tok.kind != TokenKind::Identifier) lex_.fail(tok, "expected element identifier");
    ElementIdentifier id;
    id.where = tok.where;
    id.path.push_back(lex_.next().text);
    while (lex_.accept(".")) id.path.push_back(lex_.expect_identifier("identifier after '.'").text);
    return id;
  }

  TagUse tag() {
    TagUse use;
    Token name = lex_.expect_identifier("tag name");
    use.name = name.text;
    use.where = name.where;
    if (lex_.accept("=")) {
      use.value = ValuedValue{lex_.expect_string("string value").text};
    } else if (lex_.accept("{")) {
      ComplexValue complex;
      if (!lex_.peek().is_punct("}")) {
        do {
          complex.subtags.push_back(tag());
        } while (lex_.accept(","));
        lex_.expect(";");
      }
      lex_.expect("}");
      use.value = std::move(complex);
    } else {
      use.value = SimpleValue{};
    }
    return use;
  }

  Lexer lex_;
  const LanguageProfile& profile_;
};

void print_body(const std::vector<BodyItem>& body, int depth, std::string& out) {
  std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
  for (const auto& item : body) {
    if (const auto* ctx = std::get_if<Context>(&item.node)) {
      out += indent + "within " + ctx->identifier.str() + " {\n";
      print_body(ctx->body, depth + 1, out);
      out += indent + "}\n";
      continue;
    }
    const auto& st = std::get<TagStatement>(item.node);
    out += indent + "tag ";
    for (std::size_t i = 0; i < st.elements.size(); ++i) out += (i ? ", " : "") + st.elements[i].str();
    out += " with ";
    for (std::size_t i = 0; i < st.tags.size(); ++i) out += (i ? ", " : "") + print_tag_use(st.tags[i]);
    out += ";\n";
  }
}

}  // namespace

ElementIdentifier ElementIdentifier::qualified(std::vector<std::string> path, SourceLocation where) {
  ElementIdentifier id;
  id.kind = Kind::QualifiedName;
  id.path = std::move(path);
  id.where = where;
  return id;
}

ElementIdentifier ElementIdentifier::bracket(std::string raw_text, std::vector<std::string> rules,
                                             SourceLocation where) {
  ElementIdentifier id;
  id.kind = Kind::Bracket;
  id.raw_text = std::move(raw_text);
  id.bracket_rules = std::move(rules);
  id.where = where;
  return id;
}

std::string ElementIdentifier::str() const {
  if (kind == Kind::Bracket) return "[" + raw_text + "]";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) out += (i ? "." : "") + path[i];
  return out;
}

std::string TagModel::qualified_name() const { return package.empty() ? name : package + "." + name; }

TagModel parse_tag_model(std::string_view source_text, const LanguageProfile& profile) {
  return TagModelParser(source_text, profile).parse();
}

std::string print_tag_use(const TagUse& tag) {
  if (const auto* v = std::get_if<ValuedValue>(&tag.value)) return tag.name + " = " + quote(v->raw);
  if (const auto* c = std::get_if<ComplexValue>(&tag.value)) {
    if (c->subtags.empty()) return tag.name + " { }";
    std::string out = tag.name + " { ";
    for (std::size_t i = 0; i < c->subtags.size(); ++i) out += (i ? ", " : "") + print_tag_use(c->subtags[i]);
    return out + "; }";
  }
  return tag.name;
}

std::string print_tag_model(const TagModel& model) {
  std::string out;
  if (!model.package.empty()) out += "package " + model.package + ";\n";
  out += "conforms to ";
  for (std::size_t i = 0; i < model.conforms_to.size(); ++i) out += (i ? ", " : "") + model.conforms_to[i].name;
  out += ";\n\ntags " + model.name + " for " + model.target_model.name + " {\n";
  print_body(model.body, 1, out);
  out += "}\n";
  return out;
}

}  // namespace tagweaver
