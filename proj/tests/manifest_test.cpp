#include <doctest.h>

#include "tagweaver/error.hpp"
#include "tagweaver/manifest.hpp"
#include "test_support.hpp"

using namespace tagweaver;

namespace {

ErrorCode error_of(std::string_view text) {
  try {
    parse_manifest(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("statechart excerpt parses to four productions") {
  auto m = parse_manifest(R"(grammar Statechart
@named production SCDefinition = Name State* Transition*
@named production State = Name State* Invariant?
production Transition = source:Name target:Name
production Invariant = Expression
)");
  CHECK(m.grammar_name == "Statechart");
  REQUIRE(m.productions.size() == 4);
  CHECK(m.productions[0].name_identifiable);
  CHECK_FALSE(m.productions[2].name_identifiable);
  auto refs = m.find_production("Transition")->rhs_refs();
  REQUIRE(refs.size() == 2);
  CHECK(refs[0] == RhsRef{"source", "Name", Cardinality::Required});
  CHECK(refs[1] == RhsRef{"target", "Name", Cardinality::Required});
  CHECK(m.find_production("State")->rhs_refs()[1].cardinality == Cardinality::Many);
  CHECK(m.find_production("State")->rhs_refs()[2].cardinality == Cardinality::Optional);
}

TEST_CASE("format example with skipped nonterminals") {
  auto m = parse_manifest(R"(grammar Statechart
@named production SCDefinition = Name State* Transition*
@named production State = Name State* Invariant?
production Transition = source:Name target:Name
production Invariant = Expression
@skip interface Element
@skip production TransitionBody = ...
)");
  CHECK(m.productions.size() == 5);
  CHECK(m.find_production("TransitionBody")->skipped);
  CHECK(m.find_production("TransitionBody")->elided);
  REQUIRE(m.interfaces.size() == 1);
  CHECK(m.interfaces[0].skipped);
}

TEST_CASE("empty grammar body") {
  auto m = parse_manifest("grammar Empty\n");
  CHECK(m.productions.empty());
}

TEST_CASE("annotations, terminals and externals") {
  auto m = parse_manifest(R"(grammar G   # trailing comment
external Expr, Block
@alias Top @named production Root = "root" Name "{" Item+ "}"
@syntax "lhs := rhs" production Item = lhs:Expr ":=" rhs:Expr Block?
)");
  const auto* root = m.find_production("Root");
  CHECK(root->alias == std::optional<std::string>("Top"));
  CHECK(root->rhs.size() == 5);
  CHECK(std::get<Terminal>(root->rhs[0]).text == "root");
  CHECK(m.find_production("Item")->concrete_syntax_sketch == std::optional<std::string>("lhs := rhs"));
  CHECK(m.externals == std::vector<std::string>{"Expr", "Block"});
}

TEST_CASE("built-in manifest matches the shipped file") {
  CHECK(parse_manifest(statechart_manifest_text()) == parse_manifest(test_support::data("statechart.glang")));
}

TEST_CASE("manifest errors") {
  CHECK(error_of("grammar G\nproduction State = Name\nproduction State = Name\n") == ErrorCode::DuplicateProduction);
  CHECK(error_of("grammar G\nproduction A = Name\ninterface A\n") == ErrorCode::DuplicateProduction);
  CHECK(error_of("grammar G\nproduction A = Missing\n") == ErrorCode::UnknownNonterminalReference);
  CHECK(error_of("grammar G\nproduction A = Name Name\n") == ErrorCode::MissingPrecedingIdentifier);
  CHECK(error_of("grammar G\nproduction A = x:Name Name\n") == ErrorCode::MissingPrecedingIdentifier);
  CHECK(error_of("grammar G\nproduction A = x:Name x:String\n") == ErrorCode::DuplicatePrecedingIdentifier);
  CHECK(error_of("production A = Name\n") == ErrorCode::ParseError);
  CHECK(error_of("") == ErrorCode::ParseError);
  CHECK(error_of("grammar G\ngrammar H\n") == ErrorCode::ParseError);
  CHECK(error_of("grammar G\n@bogus production A = Name\n") == ErrorCode::ParseError);
  CHECK(error_of("grammar G\n@named interface I\n") == ErrorCode::ParseError);
  CHECK(error_of("grammar G\nproduction A = ... Name\n") == ErrorCode::ParseError);
  CHECK(error_of("grammar G\nproduction A = (Name | String)\n") == ErrorCode::ParseError);
}

TEST_CASE("parse errors report line and column") {
  try {
    parse_manifest("grammar G\n\nproduction = Name\n");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.where().line == 3);
    CHECK(e.where().column == 12);
  }
}

TEST_CASE("printing is canonical and re-parses") {
  auto m = parse_manifest(statechart_manifest_text());
  auto printed = print_manifest(m);
  CHECK(parse_manifest(printed) == m);
  CHECK(print_manifest(parse_manifest(printed)) == printed);
}
