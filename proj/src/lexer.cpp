#include "lexer.hpp"

#include <array>
#include <cctype>

namespace cuc::detail {

const char* describe(Tok t) {
  switch (t) {
    case Tok::Int: return "integer";
    case Tok::Ident: return "identifier";
    case Tok::EventValue: return "'?ev'";
    case Tok::Oplus: return "'(+)'";
    case Tok::ColonColon: return "'::'";
    case Tok::Assign: return "':='";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semicolon: return "';'";
    case Tok::Bar: return "'|'";
    case Tok::OrOr: return "'||'";
    case Tok::AndAnd: return "'&&'";
    case Tok::Bang: return "'!'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Less: return "'<'";
    case Tok::LessEq: return "'<='";
    case Tok::Empty: return "'<>'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Dot: return "'.'";
    case Tok::Dollar: return "'$'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "token";
}

namespace {

struct Symbol {
  std::string_view text;
  Tok kind;
};

// Longest spellings first so that matching is maximal munch.
constexpr std::array<Symbol, 29> kSymbols{{
    {"(+)", Tok::Oplus}, {"?ev", Tok::EventValue},
    {"::", Tok::ColonColon}, {":=", Tok::Assign}, {"->", Tok::Arrow},
    {"=>", Tok::FatArrow}, {"||", Tok::OrOr}, {"&&", Tok::AndAnd},
    {"==", Tok::EqEq}, {"!=", Tok::NotEq}, {"<=", Tok::LessEq},
    {"<>", Tok::Empty},
    {"(", Tok::LParen}, {")", Tok::RParen}, {"{", Tok::LBrace},
    {"}", Tok::RBrace}, {"[", Tok::LBracket}, {"]", Tok::RBracket},
    {",", Tok::Comma}, {";", Tok::Semicolon}, {"|", Tok::Bar},
    {"!", Tok::Bang}, {"<", Tok::Less}, {"+", Tok::Plus},
    {"-", Tok::Minus}, {"*", Tok::Star}, {".", Tok::Dot},
    {"$", Tok::Dollar}, {"=", Tok::Equals},
}};

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = Tok::Int;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      tok.kind = Tok::Ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (const auto& sym : kSymbols) {
      if (src.substr(i, sym.text.size()) == sym.text) {
        tok.kind = sym.kind;
        tok.text = std::string(sym.text);
        advance(sym.text.size());
        out.push_back(std::move(tok));
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

Token TokenStream::expect(Tok t, std::string_view context) {
  if (!at(t)) {
    fail(std::string("expected ") + describe(t) + " " + std::string(context) + ", found " +
         (peek().kind == Tok::End ? std::string("end of input") : "'" + peek().text + "'"));
  }
  return next();
}

void TokenStream::expect_keyword(std::string_view kw) {
  if (!at_keyword(kw)) {
    fail("expected '" + std::string(kw) + "', found " +
         (peek().kind == Tok::End ? std::string("end of input") : "'" + peek().text + "'"));
  }
  next();
}

void TokenStream::fail(const std::string& message) const {
  throw ParseError(peek().line, peek().column, message);
}

bool is_reserved_word(std::string_view word) {
  static constexpr std::array<std::string_view, 9> kWords{
      "do", "cbr", "comm", "skip", "true", "false", "if", "then", "else"};
  for (auto w : kWords) {
    if (w == word) return true;
  }
  return false;
}

}  // namespace cuc::detail
