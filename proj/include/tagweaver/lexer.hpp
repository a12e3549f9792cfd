#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagweaver/source.hpp"

namespace tagweaver {

enum class TokenKind { Identifier, Number, String, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  /// Identifier/number/punctuation spelling, or the unescaped content of a string literal.
  std::string text;
  SourceLocation where;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;

  bool is_punct(std::string_view p) const { return kind == TokenKind::Punct && text == p; }
  bool is_keyword(std::string_view k) const { return kind == TokenKind::Identifier && text == k; }
  bool is_end() const { return kind == TokenKind::End; }
};

struct LexerOptions {
  /// Treat `#` as a line comment (grammar manifests). `//` and `/* */` are always comments.
  bool hash_comments = false;
};

/// Pull-based tokenizer shared by all textual formats. Supports one token of
/// lookahead plus raw-text capture for opaque fragments such as invariant
/// expressions and bracketed element identifiers.
class Lexer {
 public:
  explicit Lexer(std::string_view text, LexerOptions options = {});

  const Token& peek();
  Token next();

  /// Consumes the next token if it is the given punctuation or keyword.
  bool accept(std::string_view spelling);
  Token expect(std::string_view spelling);
  Token expect_identifier(std::string_view what);
  Token expect_string(std::string_view what);
  /// Identifier ("." Identifier)*
  std::string qualified_name(std::string_view what);

  /// Returns the text up to the bracket matching an already-consumed `open`,
  /// and consumes the closing bracket. Nested brackets and string literals are
  /// skipped over. The result is trimmed.
  std::string raw_until_matching(char open, char close, SourceLocation open_at);
  /// Returns the trimmed text up to (not including) `terminator` at nesting depth 0.
  std::string raw_until(char terminator);

  SourceLocation location_of(std::size_t offset) const;
  SourceLocation here();

  [[noreturn]] void fail(const Token& at, const std::string& message) const;

 private:
  Token lex();
  void skip_trivia();

  std::string_view text_;
  LexerOptions options_;
  std::size_t pos_ = 0;
  std::optional<Token> lookahead_;
  std::vector<std::size_t> line_starts_;
};

/// Tokenizes a complete fragment. The trailing End token is not included.
std::vector<Token> tokenize(std::string_view text, LexerOptions options = {});

/// Joins token spellings with single spaces; string tokens are re-quoted.
/// Used to compare fragments modulo whitespace.
std::string normalize_fragment(std::string_view text);

/// Quotes and escapes a string literal (`\"` and `\\` only).
std::string quote(std::string_view raw);

bool is_identifier(std::string_view text);

}  // namespace tagweaver
