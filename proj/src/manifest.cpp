#include "tagweaver/manifest.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tagweaver/error.hpp"
#include "tagweaver/lexer.hpp"

namespace tagweaver {
namespace {

constexpr std::string_view kStatechartManifest = R"(# Textual Statechart subset used as the built-in source language.
grammar Statechart

@named @alias Statechart production SCDefinition = "statechart" Name "{" Element* "}"
@named production State = "state" Name "{" Element* "}"
@syntax "source -> target" production Transition = source:Name "->" target:Name TransitionBody?
@syntax "Expression" production Invariant = "[" Expression "]"
@skip interface Element
@skip production TransitionBody = ...
)";

/// Cursor over the tokens of one manifest line.
class LineCursor {
 public:
  LineCursor(const std::vector<Token>& tokens, const Lexer& lexer) : tokens_(tokens), lexer_(lexer) {
    end_.kind = TokenKind::End;
    end_.where = tokens.back().where;
    end_.where.column += tokens.back().end - tokens.back().begin;
  }

  const Token& peek() const { return i_ < tokens_.size() ? tokens_[i_] : end_; }
  const Token& next() { return i_ < tokens_.size() ? tokens_[i_++] : end_; }
  bool done() const { return i_ >= tokens_.size(); }
  bool accept_punct(std::string_view p) {
    if (peek().is_punct(p)) {
      ++i_;
      return true;
    }
    return false;
  }
  const Token& identifier(std::string_view what) {
    if (peek().kind != TokenKind::Identifier) lexer_.fail(peek(), "expected " + std::string(what));
    return next();
  }
  [[noreturn]] void fail(const std::string& message) const { lexer_.fail(peek(), message); }

 private:
  const std::vector<Token>& tokens_;
  const Lexer& lexer_;
  std::size_t i_ = 0;
  Token end_;
};

struct Annotations {
  bool named = false;
  bool skip = false;
  std::optional<std::string> alias;
  std::optional<std::string> syntax;
  SourceLocation first;
};

Annotations parse_annotations(LineCursor& cur) {
  Annotations a;
  while (cur.peek().is_punct("@")) {
    if (!a.first.known()) a.first = cur.peek().where;
    cur.next();
    const Token& name = cur.identifier("annotation name");
    if (name.text == "named") {
      a.named = true;
    } else if (name.text == "skip") {
      a.skip = true;
    } else if (name.text == "alias") {
      a.alias = cur.identifier("alias keyword").text;
    } else if (name.text == "syntax") {
      if (cur.peek().kind != TokenKind::String) cur.fail("expected quoted syntax sketch");
      a.syntax = cur.next().text;
    } else {
      throw Error(ErrorCode::ParseError, "unknown annotation '@" + name.text + "'", name.where);
    }
  }
  return a;
}

void parse_rhs(LineCursor& cur, Production& p) {
  if (cur.peek().is_punct("...")) {
    cur.next();
    p.elided = true;
    if (!cur.done()) cur.fail("expected end of line after '...'");
    return;
  }
  while (!cur.done()) {
    const Token& tok = cur.peek();
    if (tok.kind == TokenKind::String) {
      p.rhs.emplace_back(Terminal{cur.next().text});
      continue;
    }
    if (tok.kind != TokenKind::Identifier) cur.fail("expected nonterminal or quoted terminal");
    RhsRef ref;
    std::string first = cur.next().text;
    if (cur.accept_punct(":")) {
      ref.preceding_identifier = first;
      ref.nonterminal = cur.identifier("nonterminal after ':'").text;
    } else {
      ref.nonterminal = first;
    }
    if (cur.accept_punct("?")) {
      ref.cardinality = Cardinality::Optional;
    } else if (cur.accept_punct("*")) {
      ref.cardinality = Cardinality::Many;
    } else if (cur.accept_punct("+")) {
      ref.cardinality = Cardinality::AtLeastOne;
    }
    p.rhs.emplace_back(std::move(ref));
  }
}

void validate(const GrammarManifest& m) {
  std::set<std::string, std::less<>> declared;
  for (const auto& p : m.productions) {
    if (!declared.insert(p.name).second) {
      throw Error(ErrorCode::DuplicateProduction, "production '" + p.name + "' is defined more than once",
                  p.where);
    }
  }
  for (const auto& i : m.interfaces) {
    if (!declared.insert(i.name).second) {
      throw Error(ErrorCode::DuplicateProduction, "nonterminal '" + i.name + "' is defined more than once",
                  i.where);
    }
  }
  std::set<std::string, std::less<>> known(declared);
  known.insert(m.externals.begin(), m.externals.end());
  known.insert(inherited_nonterminals().begin(), inherited_nonterminals().end());

  for (const auto& p : m.productions) {
    std::map<std::string, int, std::less<>> occurrences;
    std::set<std::string, std::less<>> labels;
    for (const auto& ref : p.rhs_refs()) {
      if (!known.contains(ref.nonterminal)) {
        throw Error(ErrorCode::UnknownNonterminalReference,
                    "production '" + p.name + "' references undefined nonterminal '" + ref.nonterminal + "'",
                    p.where);
      }
      ++occurrences[ref.nonterminal];
      if (ref.preceding_identifier && !labels.insert(*ref.preceding_identifier).second) {
        throw Error(ErrorCode::DuplicatePrecedingIdentifier,
                    "preceding identifier '" + *ref.preceding_identifier + "' occurs twice in production '" +
                        p.name + "'",
                    p.where);
      }
    }
    for (const auto& ref : p.rhs_refs()) {
      if (occurrences[ref.nonterminal] > 1 && !ref.preceding_identifier) {
        throw Error(ErrorCode::MissingPrecedingIdentifier,
                    "nonterminal '" + ref.nonterminal + "' occurs more than once in production '" + p.name +
                        "' and needs a preceding identifier on every occurrence",
                    p.where);
      }
    }
  }
}

}  // namespace

std::vector<RhsRef> Production::rhs_refs() const {
  std::vector<RhsRef> out;
  for (const auto& e : rhs) {
    if (const auto* ref = std::get_if<RhsRef>(&e)) out.push_back(*ref);
  }
  return out;
}

std::vector<std::string> Production::preceding_identifiers() const {
  std::vector<std::string> out;
  for (const auto& ref : rhs_refs()) {
    if (ref.preceding_identifier) out.push_back(*ref.preceding_identifier);
  }
  return out;
}

const Production* GrammarManifest::find_production(std::string_view name) const {
  auto it = std::find_if(productions.begin(), productions.end(), [&](const Production& p) { return p.name == name; });
  return it == productions.end() ? nullptr : &*it;
}

bool GrammarManifest::is_interface(std::string_view name) const {
  return std::any_of(interfaces.begin(), interfaces.end(), [&](const InterfaceDecl& i) { return i.name == name; });
}

const std::vector<std::string>& inherited_nonterminals() {
  static const std::vector<std::string> names = {"Name", "QualifiedName", "String", "Int", "Boolean", "Expression"};
  return names;
}

GrammarManifest parse_manifest(std::string_view source_text) {
  Lexer lexer(source_text, LexerOptions{.hash_comments = true});
  std::vector<std::vector<Token>> lines;
  while (!lexer.peek().is_end()) {
    Token tok = lexer.next();
    if (lines.empty() || lines.back().back().where.line != tok.where.line) lines.emplace_back();
    lines.back().push_back(std::move(tok));
  }

  GrammarManifest m;
  bool have_header = false;
  for (const auto& line : lines) {
    LineCursor cur(line, lexer);
    if (!have_header) {
      if (!cur.peek().is_keyword("grammar")) cur.fail("expected 'grammar' header");
      cur.next();
      m.grammar_name = cur.identifier("grammar name").text;
      if (!cur.done()) cur.fail("expected end of line after grammar name");
      have_header = true;
      continue;
    }
    Annotations ann = parse_annotations(cur);
    const Token& keyword = cur.identifier("'production', 'interface' or 'external'");
    if (keyword.text == "production") {
      Production p;
      p.where = ann.first.known() ? ann.first : keyword.where;
      p.name = cur.identifier("production name").text;
      p.name_identifiable = ann.named;
      p.skipped = ann.skip;
      p.alias = ann.alias;
      p.concrete_syntax_sketch = ann.syntax;
      if (!cur.accept_punct("=")) cur.fail("expected '='");
      parse_rhs(cur, p);
      m.productions.push_back(std::move(p));
    } else if (keyword.text == "interface") {
      if (ann.named || ann.alias || ann.syntax) {
        throw Error(ErrorCode::ParseError, "only @skip applies to interfaces", keyword.where);
      }
      InterfaceDecl decl{cur.identifier("interface name").text, ann.skip, keyword.where};
      if (!cur.done()) cur.fail("expected end of line after interface name");
      m.interfaces.push_back(std::move(decl));
    } else if (keyword.text == "external") {
      if (ann.first.known()) throw Error(ErrorCode::ParseError, "annotations do not apply to externals", ann.first);
      do {
        m.externals.push_back(cur.identifier("external nonterminal").text);
      } while (cur.accept_punct(","));
      if (!cur.done()) cur.fail("expected end of line");
    } else if (keyword.text == "grammar") {
      throw Error(ErrorCode::ParseError, "duplicate 'grammar' header", keyword.where);
    } else {
      throw Error(ErrorCode::ParseError, "expected 'production', 'interface' or 'external', found '" + keyword.text + "'",
                  keyword.where);
    }
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "missing 'grammar' header", lexer.location_of(0));
  validate(m);
  return m;
}

std::string print_manifest(const GrammarManifest& m) {
  std::string out = "grammar " + m.grammar_name + "\n";
  for (const auto& p : m.productions) {
    if (p.name_identifiable) out += "@named ";
    if (p.skipped) out += "@skip ";
    if (p.alias) out += "@alias " + *p.alias + " ";
    if (p.concrete_syntax_sketch) out += "@syntax " + quote(*p.concrete_syntax_sketch) + " ";
    out += "production " + p.name + " =";
    if (p.elided) out += " ...";
    for (const auto& e : p.rhs) {
      if (const auto* t = std::get_if<Terminal>(&e)) {
        out += " " + quote(t->text);
      } else {
        const auto& ref = std::get<RhsRef>(e);
        out += " ";
        if (ref.preceding_identifier) out += *ref.preceding_identifier + ":";
        out += ref.nonterminal;
        out += suffix(ref.cardinality);
      }
    }
    out += "\n";
  }
  for (const auto& i : m.interfaces) {
    out += (i.skipped ? "@skip interface " : "interface ") + i.name + "\n";
  }
  for (const auto& e : m.externals) out += "external " + e + "\n";
  return out;
}

std::string_view statechart_manifest_text() { return kStatechartManifest; }

}  // namespace tagweaver
