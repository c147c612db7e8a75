#pragma once

// Tokenizer shared by the program parser and the invariant-file parser.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cuc/error.hpp"

namespace cuc::detail {

enum class Tok {
  Int,
  Ident,
  EventValue,  // ?ev
  Oplus,       // (+)
  ColonColon,
  Assign,      // :=
  Arrow,       // ->
  FatArrow,    // =>
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Bar,
  OrOr,
  AndAnd,
  Bang,
  EqEq,
  NotEq,
  Less,
  LessEq,
  Empty,       // <>
  Plus,
  Minus,
  Star,
  Dot,
  Dollar,
  Equals,
  End,
};

const char* describe(Tok t);

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Splits `source` into tokens; `--` starts a comment running to end of line.
/// Throws ParseError on an unknown character.
std::vector<Token> tokenize(std::string_view source);

/// Cursor over a token vector with the small helpers every recursive-descent
/// parser here needs.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  Token next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok t) {
    if (!at(t)) return false;
    next();
    return true;
  }
  bool accept_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    next();
    return true;
  }
  Token expect(Tok t, std::string_view context);
  void expect_keyword(std::string_view kw);

  [[noreturn]] void fail(const std::string& message) const;

  std::size_t position() const { return pos_; }
  void reset(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool is_reserved_word(std::string_view word);

}  // namespace cuc::detail
