#pragma once

// Concrete syntax for CUC programs (`.cuc` files).
//
//   program     := codetree
//   codetree    := leaf | codetree "(+)" codetree | "(" codetree ")"   -- (+) is right-assoc
//   leaf        := NAT "::" instr
//   instr       := "do" "{" assignblock ("|" assignblock)* "}"
//                | "cbr" expr "->" NAT "," NAT
//                | "comm" "{" offer (";" offer)* "}" "{" [upd (";" upd)*] "}"
//   assignblock := "skip" | IDENT ":=" expr ("," IDENT ":=" expr)*
//   offer       := "[" expr "]" IDENT "!" "{" expr ("," expr)* "}"
//   upd         := IDENT "=>" assignblock
//
// Expressions, loosest first: `if c then a else b`, `||`, `&&`,
// `== != < <=` (non-associative), `+ -`, `*`, unary `! -`, atoms
// (`true`, `false`, decimal integers, identifiers, `?ev`, parentheses).
// `--` comments run to end of line.

#include <string>
#include <string_view>

#include "cuc/ast.hpp"

namespace cuc {

/// Throws ParseError with a line/column on lexical or syntax errors.
CodeTree parse(std::string_view text);

Expr parse_expr(std::string_view text);

/// Canonical text: one leaf per line, continuation lines start with "(+) ",
/// left-nested compositions are parenthesized. parse(render(t)) == t.
std::string render(const CodeTree& code);

std::string render(const LabeledInstruction& li);

std::string render(const Expr& e);

}  // namespace cuc
