#include "tagweaver/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "tagweaver/error.hpp"

namespace tagweaver {
namespace {

constexpr std::array<std::string_view, 9> kMultiCharPunct = {
    "...", "->", "!=", "==", "<=", ">=", "&&", "||", "::"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Lexer::Lexer(std::string_view text, LexerOptions options) : text_(text), options_(options) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < text_.size(); ++i) {
    if (text_[i] == '\n') line_starts_.push_back(i + 1);
  }
}

SourceLocation Lexer::location_of(std::size_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
  return {line, offset - line_starts_[line - 1] + 1};
}

SourceLocation Lexer::here() { return peek().where; }

void Lexer::fail(const Token& at, const std::string& message) const {
  std::string found = at.is_end() ? "end of input" : "'" + at.text + "'";
  throw Error(ErrorCode::ParseError, message + ", found " + found, at.where);
}

void Lexer::skip_trivia() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else if (options_.hash_comments && c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
      std::size_t close = text_.find("*/", pos_ + 2);
      if (close == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "unterminated block comment", location_of(pos_));
      }
      pos_ = close + 2;
    } else {
      return;
    }
  }
}

Token Lexer::lex() {
  skip_trivia();
  Token tok;
  tok.begin = pos_;
  tok.where = location_of(pos_);
  if (pos_ >= text_.size()) {
    tok.kind = TokenKind::End;
    tok.end = pos_;
    return tok;
  }
  char c = text_[pos_];
  if (ident_start(c)) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    tok.kind = TokenKind::Identifier;
    tok.text = std::string(text_.substr(start, pos_ - start));
  } else if (std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok.kind = TokenKind::Number;
    tok.text = std::string(text_.substr(start, pos_ - start));
  } else if (c == '"') {
    ++pos_;
    std::string content;
    bool closed = false;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '"') {
        ++pos_;
        closed = true;
        break;
      }
      if (d == '\\' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '"' || text_[pos_ + 1] == '\\')) {
        content.push_back(text_[pos_ + 1]);
        pos_ += 2;
        continue;
      }
      content.push_back(d);
      ++pos_;
    }
    if (!closed) throw Error(ErrorCode::ParseError, "unterminated string literal", tok.where);
    tok.kind = TokenKind::String;
    tok.text = std::move(content);
  } else {
    tok.kind = TokenKind::Punct;
    for (std::string_view p : kMultiCharPunct) {
      if (text_.substr(pos_, p.size()) == p) {
        tok.text = std::string(p);
        break;
      }
    }
    if (tok.text.empty()) tok.text = std::string(1, c);
    pos_ += tok.text.size();
  }
  tok.end = pos_;
  return tok;
}

const Token& Lexer::peek() {
  if (!lookahead_) {
    std::size_t saved = pos_;
    lookahead_ = lex();
    pos_ = saved;
  }
  return *lookahead_;
}

Token Lexer::next() {
  Token tok = peek();
  pos_ = tok.end;
  lookahead_.reset();
  return tok;
}

bool Lexer::accept(std::string_view spelling) {
  const Token& tok = peek();
  if ((tok.kind == TokenKind::Punct || tok.kind == TokenKind::Identifier) && tok.text == spelling) {
    next();
    return true;
  }
  return false;
}

Token Lexer::expect(std::string_view spelling) {
  const Token& tok = peek();
  if ((tok.kind == TokenKind::Punct || tok.kind == TokenKind::Identifier) && tok.text == spelling) {
    return next();
  }
  fail(tok, "expected '" + std::string(spelling) + "'");
}

Token Lexer::expect_identifier(std::string_view what) {
  const Token& tok = peek();
  if (tok.kind != TokenKind::Identifier) fail(tok, "expected " + std::string(what));
  return next();
}

Token Lexer::expect_string(std::string_view what) {
  const Token& tok = peek();
  if (tok.kind != TokenKind::String) fail(tok, "expected " + std::string(what));
  return next();
}

std::string Lexer::qualified_name(std::string_view what) {
  std::string name = expect_identifier(what).text;
  while (peek().is_punct(".")) {
    next();
    name += "." + expect_identifier("identifier after '.'").text;
  }
  return name;
}

std::string Lexer::raw_until_matching(char open, char close, SourceLocation open_at) {
  lookahead_.reset();
  std::size_t start = pos_;
  int depth = 1;
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '"') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        ++pos_;
      }
    } else if (c == open) {
      ++depth;
    } else if (c == close) {
      if (--depth == 0) {
        std::string_view inner = text_.substr(start, pos_ - start);
        ++pos_;
        return std::string(trim(inner));
      }
    }
    ++pos_;
  }
  throw Error(ErrorCode::ParseError, std::string("unterminated '") + open + "'", open_at);
}

std::string Lexer::raw_until(char terminator) {
  lookahead_.reset();
  std::size_t start = pos_;
  int depth = 0;
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '"') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        ++pos_;
      }
    } else if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      if (depth == 0) break;
      --depth;
    } else if (c == terminator && depth == 0) {
      break;
    }
    ++pos_;
  }
  return std::string(trim(text_.substr(start, pos_ - start)));
}

std::vector<Token> tokenize(std::string_view text, LexerOptions options) {
  Lexer lexer(text, options);
  std::vector<Token> out;
  while (!lexer.peek().is_end()) out.push_back(lexer.next());
  return out;
}

std::string quote(std::string_view raw) {
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string normalize_fragment(std::string_view text) {
  std::string out;
  for (const Token& tok : tokenize(text)) {
    if (!out.empty()) out.push_back(' ');
    out += tok.kind == TokenKind::String ? quote(tok.text) : tok.text;
  }
  return out;
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(text.front())) return false;
  return std::all_of(text.begin(), text.end(), ident_char);
}

}  // namespace tagweaver
