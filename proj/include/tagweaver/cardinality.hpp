#pragma once

#include <string_view>

namespace tagweaver {

/// Multiplicity suffix shared by grammar right-hand sides and complex tag
/// type references: none, `?`, `*`, `+`.
enum class Cardinality { Required, Optional, Many, AtLeastOne };

constexpr std::string_view suffix(Cardinality c) {
  switch (c) {
    case Cardinality::Optional: return "?";
    case Cardinality::Many: return "*";
    case Cardinality::AtLeastOne: return "+";
    case Cardinality::Required: break;
  }
  return "";
}

constexpr bool admits(Cardinality c, std::size_t count) {
  switch (c) {
    case Cardinality::Required: return count == 1;
    case Cardinality::Optional: return count <= 1;
    case Cardinality::AtLeastOne: return count >= 1;
    case Cardinality::Many: return true;
  }
  return false;
}

}  // namespace tagweaver
