#pragma once

#include <cstddef>
#include <string>

namespace tagweaver {

/// 1-based line/column position in a source file. Line 0 means "unknown".
struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;

  bool known() const noexcept { return line != 0; }
  std::string str() const;

  // Locations are bookkeeping, not content: two parsed documents that differ
  // only in layout compare equal.
  friend bool operator==(const SourceLocation&, const SourceLocation&) noexcept { return true; }

  /// Positional ordering, ignoring the equality override above.
  static bool before(const SourceLocation& a, const SourceLocation& b) noexcept {
    return a.line != b.line ? a.line < b.line : a.column < b.column;
  }
};

}  // namespace tagweaver
