#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tagweaver/diagnostic.hpp"
#include "tagweaver/error.hpp"
#include "tagweaver/tag_model.hpp"

namespace tagweaver {

struct StateDef {
  std::string name;
  bool initial = false;
  bool final = false;
  std::vector<StateDef> substates;
  /// Bracketed invariant expressions, verbatim and trimmed.
  std::vector<std::string> invariants_src;
  SourceLocation where;

  bool operator==(const StateDef&) const = default;
};

struct TransitionDef {
  std::string source;  // as written
  std::string target;
  std::optional<std::string> event;
  /// Dot-separated path of the state whose body declares the transition; empty at top level.
  std::string owner;
  /// Endpoints resolved to full state paths.
  std::string source_path;
  std::string target_path;
  SourceLocation where;

  bool operator==(const TransitionDef&) const = default;
};

struct StatechartModel {
  std::string package;
  std::string name;
  std::vector<StateDef> states;
  std::vector<TransitionDef> transitions;

  std::string qualified_name() const;
  const StateDef* find_state(std::span<const std::string> path) const;

  bool operator==(const StatechartModel&) const = default;
};

namespace element_types {
inline constexpr std::string_view kStatechart = "Statechart";
inline constexpr std::string_view kState = "State";
inline constexpr std::string_view kTransition = "Transition";
inline constexpr std::string_view kInvariant = "Invariant";
}  // namespace element_types

/// An addressable element: its path inside the model and its element type,
/// spelled as a scope keyword (or alias) of the Statechart profile.
///
/// Paths: the statechart is addressed by its own name, states by their
/// dot-separated path (`Active.Call`), transitions as `[Src -> Tgt]` with
/// full endpoint paths, invariants as `StatePath[normalized expression]`.
struct ElementHandle {
  std::string path;
  std::string element_type;

  bool operator==(const ElementHandle&) const = default;
  auto operator<=>(const ElementHandle&) const = default;
};

/// Outcome of a non-throwing lookup.
struct Resolution {
  std::optional<ElementHandle> handle;
  ErrorCode failure = ErrorCode::UnresolvedElement;
  std::string message;

  explicit operator bool() const { return handle.has_value(); }
};

/// Parses a `.sc` document. Throws tagweaver::Error.
StatechartModel parse_statechart(std::string_view source_text);

std::string print_statechart(const StatechartModel& model);

/// Warnings that do not prevent use of the model (duplicate transitions).
std::vector<Diagnostic> statechart_warnings(const StatechartModel& model);

/// Resolves an identifier inside `context` (nullptr: model root). Names are
/// looked up relative to a state context first and fall back to the root.
Resolution try_resolve_element(const StatechartModel& model, const ElementIdentifier& ident,
                               const ElementHandle* context = nullptr);

/// Throwing variant of try_resolve_element.
ElementHandle resolve_element(const StatechartModel& model, const ElementIdentifier& ident,
                              const ElementHandle* context = nullptr);

/// Every addressable element in deterministic pre-order: the statechart,
/// each state followed by its invariants and substates, then transitions.
std::vector<ElementHandle> enumerate_elements(const StatechartModel& model);

}  // namespace tagweaver
