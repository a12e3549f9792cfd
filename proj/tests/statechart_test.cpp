#include <doctest.h>

#include <algorithm>

#include "tagweaver/error.hpp"
#include "tagweaver/statechart.hpp"
#include "test_support.hpp"

using namespace tagweaver;

namespace {

StatechartModel mobile() { return parse_statechart(test_support::data("mobile.sc")); }

ElementIdentifier name(std::vector<std::string> path) { return ElementIdentifier::qualified(std::move(path)); }

ElementIdentifier bracket(const std::string& text) {
  return ElementIdentifier::bracket(text, statechart_profile().matching_bracket_rules(text));
}

ErrorCode error_of(std::string_view text) {
  try {
    parse_statechart(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("the mobile statechart") {
  auto m = mobile();
  CHECK(m.qualified_name() == "mobile.Mobile");
  REQUIRE(m.states.size() == 4);
  CHECK(m.states[0].name == "Start");
  CHECK(m.states[0].initial);
  CHECK(m.states[3].final);
  REQUIRE(m.states[1].substates.size() == 2);
  CHECK(m.states[1].substates[0].invariants_src == std::vector<std::string>{"status!=isActive"});
  REQUIRE(m.transitions.size() == 1);
  CHECK(m.transitions[0].source == "Start");
  CHECK(m.transitions[0].target_path == "Active");
  CHECK(m.transitions[0].event == std::optional<std::string>("dial()"));
}

TEST_CASE("statechart parse errors") {
  CHECK(parse_statechart("package p; statechart S { }").states.empty());
  CHECK(error_of("statechart S { A -> Foo; state A; }") == ErrorCode::UnresolvedTransitionEndpoint);
  CHECK(error_of("statechart S { state A; state A; }") == ErrorCode::DuplicateSiblingState);
  CHECK(error_of("statechart S { initial initial state A; }") == ErrorCode::InvalidModifiers);
  CHECK(error_of("statechart S { [x]; }") == ErrorCode::ParseError);
  CHECK(error_of("statechart S { state A }") == ErrorCode::ParseError);
  CHECK(error_of("statechart S { <<log>> state A; }") == ErrorCode::ParseError);
}

TEST_CASE("nested transitions resolve endpoints inside their owner first") {
  auto m = parse_statechart("statechart S { state A { state B; state C; B -> C : go(); } state B; }");
  REQUIRE(m.transitions.size() == 1);
  CHECK(m.transitions[0].owner == "A");
  CHECK(m.transitions[0].source_path == "A.B");
  auto h = resolve_element(m, bracket("A.B -> A.C"));
  CHECK(h.path == "[A.B -> A.C]");
}

TEST_CASE("resolution") {
  auto m = mobile();
  CHECK(resolve_element(m, name({"Mobile"})) == ElementHandle{"Mobile", "Statechart"});

  ElementHandle active{"Active", "State"};
  CHECK(resolve_element(m, name({"Call"}), &active) == ElementHandle{"Active.Call", "State"});
  CHECK(resolve_element(m, name({"Active", "Call"})) == ElementHandle{"Active.Call", "State"});
  CHECK(resolve_element(m, name({"Mobile", "Active"})) == ElementHandle{"Active", "State"});
  // root fallback from inside a context
  CHECK(resolve_element(m, name({"Done"}), &active) == ElementHandle{"Done", "State"});

  auto missing = try_resolve_element(m, name({"Nonexistent"}));
  CHECK_FALSE(missing);
  CHECK(missing.failure == ErrorCode::UnresolvedElement);
  CHECK_FALSE(try_resolve_element(m, name({"Call"})));

  CHECK(resolve_element(m, bracket("Start -> Active")) == ElementHandle{"[Start -> Active]", "Transition"});
  CHECK(resolve_element(m, bracket("status != isActive")) ==
        ElementHandle{"Active.Call[status != isActive]", "Invariant"});
  ElementHandle call{"Active.Call", "State"};
  CHECK(resolve_element(m, bracket("status!=isActive"), &call).path == "Active.Call[status != isActive]");
  CHECK_FALSE(try_resolve_element(m, bracket("Active -> Start")));
}

TEST_CASE("context wins over root") {
  auto m = parse_statechart("statechart S { state A { state X; } state X; }");
  ElementHandle a{"A", "State"};
  CHECK(resolve_element(m, name({"X"}), &a).path == "A.X");
  CHECK(resolve_element(m, name({"X"})).path == "X");
}

TEST_CASE("ambiguity") {
  auto dup = parse_statechart("statechart S { state A; state B; A -> B : e(); A -> B : e(); }");
  auto r = try_resolve_element(dup, bracket("A -> B"));
  CHECK_FALSE(r);
  CHECK(r.failure == ErrorCode::AmbiguousTransition);
  CHECK(test_support::count_condition(statechart_warnings(dup), Condition::DuplicateTransitionWarning) == 1);

  auto inv = parse_statechart("statechart S { state A { [x > 1]; } state B { [x>1]; } }");
  auto ri = try_resolve_element(inv, bracket("x > 1"));
  CHECK(ri.failure == ErrorCode::AmbiguousElement);
  ElementHandle b{"B", "State"};
  CHECK(resolve_element(inv, bracket("x > 1"), &b).path == "B[x > 1]");
}

TEST_CASE("enumeration") {
  auto elems = enumerate_elements(mobile());
  CHECK(elems.size() == 1 + 6 + 2 + 1);
  CHECK(elems.front() == ElementHandle{"Mobile", "Statechart"});
  CHECK(elems[1].path == "Start");
  CHECK(elems.back().element_type == "Transition");
  CHECK(enumerate_elements(parse_statechart("statechart S { }")).size() == 1);
  CHECK(enumerate_elements(parse_statechart("statechart S { state A; }")).size() == 2);

  // every element resolves from the root by its own spelling
  auto m = mobile();
  for (const auto& h : elems) {
    if (h.element_type == "Invariant") continue;
    if (h.element_type == "Transition") {
      CHECK(resolve_element(m, bracket(h.path.substr(1, h.path.size() - 2))) == h);
      continue;
    }
    std::vector<std::string> parts;
    std::string part;
    for (char c : h.path + ".") {
      if (c == '.') {
        parts.push_back(part);
        part.clear();
      } else {
        part += c;
      }
    }
    CHECK(resolve_element(m, name(parts)) == h);
  }
}

TEST_CASE("round trip") {
  auto m = mobile();
  auto printed = print_statechart(m);
  CHECK(parse_statechart(printed) == m);
  CHECK(print_statechart(parse_statechart(printed)) == printed);
}
