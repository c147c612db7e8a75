#pragma once

#include "cuc/ast.hpp"
#include "lexer.hpp"

namespace cuc::detail {

/// Full expression, including a leading `if`.
Expr parse_expression(TokenStream& ts);

/// An expression at comparison precedence: arithmetic with at most one
/// comparison, no `&&`/`||` outside parentheses.
Expr parse_comparison(TokenStream& ts);

/// Unary-level expression (atoms, `!`, `-`).
Expr parse_unary(TokenStream& ts);

}  // namespace cuc::detail
