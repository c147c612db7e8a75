#include "cuc/parser.hpp"

#include <charconv>
#include <limits>

#include "expr_parser.hpp"
#include "lexer.hpp"

namespace cuc {

namespace detail {

namespace {

Value parse_int_literal(TokenStream& ts, bool negative) {
  Token t = ts.expect(Tok::Int, "in integer literal");
  std::uint64_t magnitude = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
  constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  if (ec != std::errc{} || magnitude > kMax + (negative ? 1 : 0)) {
    throw ParseError(t.line, t.column, "integer literal out of range: " + t.text);
  }
  if (!negative) return static_cast<std::int64_t>(magnitude);
  if (magnitude == kMax + 1) return std::numeric_limits<std::int64_t>::min();
  return -static_cast<std::int64_t>(magnitude);
}

Expr parse_atom(TokenStream& ts) {
  if (ts.accept(Tok::LParen)) {
    Expr e = parse_expression(ts);
    ts.expect(Tok::RParen, "to close parenthesized expression");
    return e;
  }
  if (ts.accept(Tok::EventValue)) return Expr::event_value();
  if (ts.at(Tok::Int)) return Expr::lit(parse_int_literal(ts, false));
  if (ts.accept_keyword("true")) return Expr::lit(true);
  if (ts.accept_keyword("false")) return Expr::lit(false);
  if (ts.at_keyword("if")) return parse_expression(ts);
  if (ts.at(Tok::Ident) && !is_reserved_word(ts.peek().text)) {
    return Expr::var(ts.next().text);
  }
  ts.fail("expected expression, found " +
          (ts.at(Tok::End) ? std::string("end of input") : "'" + ts.peek().text + "'"));
}

Expr parse_mul(TokenStream& ts) {
  Expr lhs = parse_unary(ts);
  while (ts.accept(Tok::Star)) lhs = Expr::binary(BinaryOp::Mul, std::move(lhs), parse_unary(ts));
  return lhs;
}

Expr parse_add(TokenStream& ts) {
  Expr lhs = parse_mul(ts);
  for (;;) {
    if (ts.accept(Tok::Plus)) {
      lhs = Expr::binary(BinaryOp::Add, std::move(lhs), parse_mul(ts));
    } else if (ts.accept(Tok::Minus)) {
      lhs = Expr::binary(BinaryOp::Sub, std::move(lhs), parse_mul(ts));
    } else {
      return lhs;
    }
  }
}

Expr parse_and(TokenStream& ts) {
  Expr lhs = parse_comparison(ts);
  while (ts.accept(Tok::AndAnd)) {
    lhs = Expr::binary(BinaryOp::And, std::move(lhs), parse_comparison(ts));
  }
  return lhs;
}

Expr parse_or(TokenStream& ts) {
  Expr lhs = parse_and(ts);
  while (ts.accept(Tok::OrOr)) lhs = Expr::binary(BinaryOp::Or, std::move(lhs), parse_and(ts));
  return lhs;
}

}  // namespace

Expr parse_unary(TokenStream& ts) {
  if (ts.accept(Tok::Bang)) return Expr::unary(UnaryOp::Not, parse_unary(ts));
  if (ts.accept(Tok::Minus)) {
    if (ts.at(Tok::Int)) return Expr::lit(parse_int_literal(ts, true));
    return Expr::unary(UnaryOp::Neg, parse_unary(ts));
  }
  return parse_atom(ts);
}

Expr parse_comparison(TokenStream& ts) {
  Expr lhs = parse_add(ts);
  BinaryOp op;
  switch (ts.peek().kind) {
    case Tok::EqEq: op = BinaryOp::Eq; break;
    case Tok::NotEq: op = BinaryOp::Ne; break;
    case Tok::Less: op = BinaryOp::Lt; break;
    case Tok::LessEq: op = BinaryOp::Le; break;
    default: return lhs;
  }
  ts.next();
  Expr rhs = parse_add(ts);
  switch (ts.peek().kind) {
    case Tok::EqEq:
    case Tok::NotEq:
    case Tok::Less:
    case Tok::LessEq:
      ts.fail("comparison operators do not chain; add parentheses");
    default:
      break;
  }
  return Expr::binary(op, std::move(lhs), std::move(rhs));
}

Expr parse_expression(TokenStream& ts) {
  if (ts.accept_keyword("if")) {
    Expr c = parse_expression(ts);
    ts.expect_keyword("then");
    Expr t = parse_expression(ts);
    ts.expect_keyword("else");
    Expr f = parse_expression(ts);
    return Expr::cond(std::move(c), std::move(t), std::move(f));
  }
  return parse_or(ts);
}

}  // namespace detail

namespace {

using detail::Tok;
using detail::TokenStream;

Label parse_label(TokenStream& ts, std::string_view context) {
  auto t = ts.expect(Tok::Int, context);
  Label l = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), l);
  if (ec != std::errc{}) throw ParseError(t.line, t.column, "label out of range: " + t.text);
  return l;
}

std::string parse_ident(TokenStream& ts, std::string_view context) {
  if (ts.at(Tok::Ident) && detail::is_reserved_word(ts.peek().text)) {
    ts.fail("'" + ts.peek().text + "' is a reserved word");
  }
  return ts.expect(Tok::Ident, context).text;
}

AssignBlock parse_block(TokenStream& ts) {
  AssignBlock block;
  if (ts.accept_keyword("skip")) return block;
  do {
    std::string var = parse_ident(ts, "as assignment target");
    ts.expect(Tok::Assign, "after assignment target");
    block.push_back({std::move(var), detail::parse_expression(ts)});
  } while (ts.accept(Tok::Comma));
  return block;
}

Instruction parse_instr(TokenStream& ts) {
  if (ts.accept_keyword("do")) {
    Do d;
    ts.expect(Tok::LBrace, "after 'do'");
    do {
      d.branches.push_back(parse_block(ts));
    } while (ts.accept(Tok::Bar));
    ts.expect(Tok::RBrace, "to close 'do' branches");
    return d;
  }
  if (ts.accept_keyword("cbr")) {
    Cbr c;
    c.cond = detail::parse_expression(ts);
    ts.expect(Tok::Arrow, "after branch condition");
    c.then_label = parse_label(ts, "as branch target");
    ts.expect(Tok::Comma, "between branch targets");
    c.else_label = parse_label(ts, "as branch target");
    return c;
  }
  if (ts.accept_keyword("comm")) {
    Comm c;
    ts.expect(Tok::LBrace, "to open offer clauses");
    do {
      OfferClause offer;
      ts.expect(Tok::LBracket, "to open offer guard");
      offer.guard = detail::parse_expression(ts);
      ts.expect(Tok::RBracket, "to close offer guard");
      offer.channel = parse_ident(ts, "as offer channel");
      ts.expect(Tok::Bang, "after offer channel");
      ts.expect(Tok::LBrace, "to open offered values");
      do {
        offer.values.push_back(detail::parse_expression(ts));
      } while (ts.accept(Tok::Comma));
      ts.expect(Tok::RBrace, "to close offered values");
      c.offers.push_back(std::move(offer));
    } while (ts.accept(Tok::Semicolon));
    ts.expect(Tok::RBrace, "to close offer clauses");
    ts.expect(Tok::LBrace, "to open update clauses");
    if (!ts.at(Tok::RBrace)) {
      do {
        ChannelUpdate upd;
        upd.channel = parse_ident(ts, "as update channel");
        ts.expect(Tok::FatArrow, "after update channel");
        upd.block = parse_block(ts);
        c.update.push_back(std::move(upd));
      } while (ts.accept(Tok::Semicolon));
    }
    ts.expect(Tok::RBrace, "to close update clauses");
    return c;
  }
  ts.fail("expected 'do', 'cbr' or 'comm', found " +
          (ts.at(Tok::End) ? std::string("end of input") : "'" + ts.peek().text + "'"));
}

CodeTree parse_tree(TokenStream& ts);

CodeTree parse_tree_atom(TokenStream& ts) {
  if (ts.accept(Tok::LParen)) {
    CodeTree t = parse_tree(ts);
    ts.expect(Tok::RParen, "to close parenthesized code");
    return t;
  }
  Label l = parse_label(ts, "as instruction label");
  ts.expect(Tok::ColonColon, "after label");
  return CodeTree::leaf({l, parse_instr(ts)});
}

CodeTree parse_tree(TokenStream& ts) {
  CodeTree lhs = parse_tree_atom(ts);
  if (ts.accept(Tok::Oplus)) return CodeTree::seq(std::move(lhs), parse_tree(ts));
  return lhs;
}

}  // namespace

CodeTree parse(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  CodeTree t = parse_tree(ts);
  if (!ts.at(Tok::End)) ts.fail("unexpected '" + ts.peek().text + "' after program");
  return t;
}

Expr parse_expr(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  Expr e = detail::parse_expression(ts);
  if (!ts.at(Tok::End)) ts.fail("unexpected '" + ts.peek().text + "' after expression");
  return e;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Cond: return 0;
    case Expr::Kind::Binary:
      switch (e.binary_op) {
        case BinaryOp::Or: return 1;
        case BinaryOp::And: return 2;
        case BinaryOp::Eq:
        case BinaryOp::Ne:
        case BinaryOp::Lt:
        case BinaryOp::Le: return 3;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 4;
        case BinaryOp::Mul: return 5;
      }
      return 0;
    case Expr::Kind::Unary: return 6;
    case Expr::Kind::Literal:
      // A negative literal reads as unary minus applied to digits.
      return is_int(e.literal) && std::get<std::int64_t>(e.literal) < 0 ? 6 : 7;
    default: return 7;
  }
}

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

std::string render_operand(const Expr& e, bool needs_parens) {
  std::string s = render(e);
  return needs_parens ? "(" + s + ")" : s;
}

std::string render_block(const AssignBlock& b) {
  if (b.empty()) return "skip";
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ", ";
    out += b[i].var + " := " + render(b[i].value);
  }
  return out;
}

std::string render_instr(const Do& d) {
  std::string out = "do { ";
  for (std::size_t i = 0; i < d.branches.size(); ++i) {
    if (i) out += " | ";
    out += render_block(d.branches[i]);
  }
  return out + " }";
}

std::string render_instr(const Cbr& c) {
  return "cbr " + render(c.cond) + " -> " + std::to_string(c.then_label) + ", " +
         std::to_string(c.else_label);
}

std::string render_instr(const Comm& c) {
  std::string out = "comm { ";
  for (std::size_t i = 0; i < c.offers.size(); ++i) {
    const auto& o = c.offers[i];
    if (i) out += "; ";
    out += "[" + render(o.guard) + "] " + o.channel + " ! {";
    for (std::size_t j = 0; j < o.values.size(); ++j) {
      if (j) out += ", ";
      out += render(o.values[j]);
    }
    out += "}";
  }
  out += " } {";
  for (std::size_t i = 0; i < c.update.size(); ++i) {
    out += i ? "; " : " ";
    out += c.update[i].channel + " => " + render_block(c.update[i].block);
  }
  return out + " }";
}

std::string render_tree(const CodeTree& t) {
  if (t.is_leaf()) return render(t.instruction());
  std::string lhs = render_tree(t.left());
  if (!t.left().is_leaf()) lhs = "(" + lhs + ")";
  return lhs + "\n(+) " + render_tree(t.right());
}

}  // namespace

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Literal: return to_string(e.literal);
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::EventValue: return "?ev";
    case Expr::Kind::Unary: {
      const Expr& arg = e.args[0];
      if (e.unary_op == UnaryOp::Not) return "!" + render_operand(arg, precedence(arg) < 6);
      // Keep "-" away from digits and from another "-" (which would start a comment).
      bool bare = arg.kind == Expr::Kind::Var || arg.kind == Expr::Kind::EventValue;
      return "-" + render_operand(arg, !bare);
    }
    case Expr::Kind::Binary: {
      int p = precedence(e);
      const Expr& l = e.args[0];
      const Expr& r = e.args[1];
      bool left_parens = precedence(l) < p || (p == 3 && precedence(l) == 3);
      bool right_parens = precedence(r) <= p;
      return render_operand(l, left_parens) + " " + spelling(e.binary_op) + " " +
             render_operand(r, right_parens);
    }
    case Expr::Kind::Cond: {
      // Branches are full expressions, but a nested `if` is bracketed so that
      // the rendering never depends on dangling-else resolution.
      auto part = [](const Expr& x) { return render_operand(x, x.kind == Expr::Kind::Cond); };
      return "if " + part(e.args[0]) + " then " + part(e.args[1]) + " else " + part(e.args[2]);
    }
  }
  return "";
}

std::string render(const LabeledInstruction& li) {
  return std::to_string(li.label) + " :: " +
         std::visit([](const auto& i) { return render_instr(i); }, li.instr);
}

std::string render(const CodeTree& code) { return render_tree(code) + "\n"; }

}  // namespace cuc
