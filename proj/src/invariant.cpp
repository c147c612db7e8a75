#include "cuc/invariant.hpp"

#include <algorithm>
#include <charconv>

#include "cuc/error.hpp"
#include "cuc/op.hpp"
#include "cuc/parser.hpp"
#include "expr_parser.hpp"
#include "spec_parser.hpp"

namespace cuc {

Formula Formula::store(Expr e) {
  Formula f;
  f.kind = Kind::StoreExpr;
  f.expr = std::move(e);
  return f;
}

Formula Formula::pc_in(std::set<Label> labels) {
  Formula f;
  f.kind = Kind::PcIn;
  f.labels = std::move(labels);
  return f;
}

Formula Formula::trace_empty() {
  Formula f;
  f.kind = Kind::TraceEmpty;
  return f;
}

Formula Formula::trace_in(std::string name, TraceSetSpec spec) {
  Formula f;
  f.kind = Kind::TraceIn;
  f.name = std::move(name);
  f.spec = std::make_shared<const TraceSetSpec>(std::move(spec));
  return f;
}

Formula Formula::trace_ends(std::string channel, Expr value) {
  Formula f;
  f.kind = Kind::TraceEnds;
  f.name = std::move(channel);
  f.expr = std::move(value);
  return f;
}

Formula Formula::negate(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.args.push_back(std::move(g));
  return f;
}

Formula Formula::conj(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::And;
  f.args.push_back(std::move(a));
  f.args.push_back(std::move(b));
  return f;
}

Formula Formula::disj(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::Or;
  f.args.push_back(std::move(a));
  f.args.push_back(std::move(b));
  return f;
}

Formula Formula::exists(std::string var, Formula body) {
  Formula f;
  f.kind = Kind::Exists;
  f.name = std::move(var);
  f.args.push_back(std::move(body));
  return f;
}

std::string render(const Formula& f) {
  using K = Formula::Kind;
  auto nested = [](const Formula& g) {
    bool compound = g.kind == K::And || g.kind == K::Or;
    return compound ? "(" + render(g) + ")" : render(g);
  };
  switch (f.kind) {
    case K::StoreExpr: return "(" + render(f.expr) + ")";
    case K::PcIn: {
      std::string out = "pc in {";
      bool first = true;
      for (Label l : f.labels) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(l);
      }
      return out + "}";
    }
    case K::TraceEmpty: return "tr == <>";
    case K::TraceIn:
      return "tr in " + (f.name.empty() ? "(" + render(f.spec->pattern()) + ")" : f.name);
    case K::TraceEnds: return "tr ends " + f.name + ".(" + render(f.expr) + ")";
    case K::Not: return "!" + nested(f.args[0]);
    case K::And: return nested(f.args[0]) + " && " + nested(f.args[1]);
    case K::Or: return nested(f.args[0]) + " || " + nested(f.args[1]);
    case K::Exists: return "exists " + f.name + ". (" + render(f.args[0]) + ")";
  }
  return "";
}

// ---------------------------------------------------------------------------

namespace {

bool holds(const Formula& f, const Config& c, const Store& store, const std::vector<Value>& universe) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::StoreExpr: {
      Value v = eval_expr(f.expr, store);
      if (!is_bool(v)) throw EvalError("store predicate '" + render(f.expr) + "' is not boolean");
      return std::get<bool>(v);
    }
    case K::PcIn: return f.labels.count(c.pc) > 0;
    case K::TraceEmpty: return c.trace.empty();
    case K::TraceIn: return f.spec->contains(c.trace);
    case K::TraceEnds:
      return !c.trace.empty() && c.trace.back().channel == f.name &&
             c.trace.back().value == eval_expr(f.expr, store);
    case K::Not: return !holds(f.args[0], c, store, universe);
    case K::And: return holds(f.args[0], c, store, universe) && holds(f.args[1], c, store, universe);
    case K::Or: return holds(f.args[0], c, store, universe) || holds(f.args[1], c, store, universe);
    case K::Exists:
      return std::any_of(universe.begin(), universe.end(), [&](const Value& v) {
        Store inner = store;
        inner[f.name] = v;
        return holds(f.args[0], c, inner, universe);
      });
  }
  return false;
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Var) out.insert(e.name);
  for (const auto& a : e.args) collect_vars(a, out);
}

void typecheck_formula(const Formula& f, TypeInference& types, std::set<std::string> bound,
                       const std::map<std::string, Type>& variables,
                       const std::optional<Type>& universe_type, std::vector<std::string>& errors) {
  using K = Formula::Kind;
  auto check_known = [&](const Expr& e) {
    std::set<std::string> vars;
    collect_vars(e, vars);
    for (const auto& v : vars) {
      if (!bound.count(v) && !variables.count(v)) {
        errors.push_back("'" + render(e) + "': unknown variable '" + v + "'");
      }
    }
  };
  switch (f.kind) {
    case K::StoreExpr:
      check_known(f.expr);
      types.expect(f.expr, Type::Bool, std::nullopt, "'" + render(f.expr) + "'", errors);
      break;
    case K::TraceEnds:
      check_known(f.expr);
      types.infer(f.expr, std::nullopt, "'" + render(f.expr) + "'", errors);
      break;
    case K::Exists:
      if (universe_type) types.unify(types.variable(f.name), types.constant(*universe_type));
      bound.insert(f.name);
      typecheck_formula(f.args[0], types, bound, variables, universe_type, errors);
      break;
    default:
      for (const auto& g : f.args) typecheck_formula(g, types, bound, variables, universe_type, errors);
      break;
  }
}

}  // namespace

bool eval_invariant(const InvariantSpec& inv, const Config& c) {
  return holds(inv.formula, c, c.store, inv.universe);
}

std::vector<std::string> typecheck(const InvariantSpec& inv,
                                   const std::map<std::string, Type>& variables) {
  TypeInference types;
  std::vector<std::string> errors;
  for (const auto& [name, t] : variables) {
    types.unify(types.variable(name), types.constant(t));
  }
  std::optional<Type> universe_type;
  if (!inv.universe.empty()) {
    universe_type = type_of(inv.universe.front());
    for (const auto& v : inv.universe) {
      if (type_of(v) != *universe_type) universe_type.reset();
    }
  }
  typecheck_formula(inv.formula, types, {}, variables, universe_type, errors);
  return errors;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Tok;
using detail::TokenStream;

class FormulaParser {
 public:
  FormulaParser(TokenStream& ts, const std::vector<Value>& universe,
                const std::map<std::string, TracePattern>& traces,
                const std::vector<InvariantSpec>& preds)
      : ts_(ts), universe_(universe), traces_(traces), preds_(preds) {}

  Formula parse() {
    Formula lhs = parse_conj();
    while (ts_.accept(Tok::OrOr)) lhs = Formula::disj(std::move(lhs), parse_conj());
    return lhs;
  }

 private:
  Formula parse_conj() {
    Formula lhs = parse_neg();
    while (ts_.accept(Tok::AndAnd)) lhs = Formula::conj(std::move(lhs), parse_neg());
    return lhs;
  }

  Formula parse_neg() {
    if (ts_.accept(Tok::Bang)) return Formula::negate(parse_neg());
    return parse_atom();
  }

  const InvariantSpec* pred(const std::string& name) const {
    for (const auto& p : preds_) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }

  // An expression atom is rejected when it names a predicate or the
  // reserved `tr`/`pc`, so that "(Pre || I)" parses as a formula.
  bool plain_expression(const Expr& e) const {
    std::set<std::string> vars;
    collect_vars(e, vars);
    return std::none_of(vars.begin(), vars.end(), [&](const std::string& v) {
      return v == "tr" || v == "pc" || pred(v) != nullptr;
    });
  }

  bool at_formula_end() const {
    return ts_.at(Tok::AndAnd) || ts_.at(Tok::OrOr) || ts_.at(Tok::RParen) ||
           ts_.at(Tok::Semicolon) || ts_.at(Tok::End);
  }

  Formula parse_atom() {
    if (ts_.at(Tok::LParen)) {
      std::size_t start = ts_.position();
      try {
        Expr e = detail::parse_comparison(ts_);
        if (at_formula_end() && plain_expression(e)) return Formula::store(std::move(e));
      } catch (const ParseError&) {
      }
      ts_.reset(start);
      ts_.next();
      Formula f = parse();
      ts_.expect(Tok::RParen, "to close formula");
      return f;
    }
    if (ts_.at_keyword("tr")) {
      ts_.next();
      if (ts_.accept(Tok::EqEq)) {
        ts_.expect(Tok::Empty, "after 'tr =='");
        return Formula::trace_empty();
      }
      if (ts_.accept(Tok::NotEq)) {
        ts_.expect(Tok::Empty, "after 'tr !='");
        return Formula::negate(Formula::trace_empty());
      }
      if (ts_.accept_keyword("in")) {
        std::size_t start = ts_.position();
        std::string first = ts_.peek().text;
        TracePattern p = detail::parse_trace_pattern(ts_, traces_);
        // Keep the name only when the whole spec is one named set.
        std::string name = ts_.position() == start + 1 && traces_.count(first) ? first : "";
        return Formula::trace_in(name, TraceSetSpec(std::move(p), universe_));
      }
      if (ts_.accept_keyword("ends")) {
        std::string channel = ts_.expect(Tok::Ident, "as channel after 'ends'").text;
        ts_.expect(Tok::Dot, "after channel");
        return Formula::trace_ends(std::move(channel), detail::parse_unary(ts_));
      }
      ts_.fail("expected '== <>', '!= <>', 'in' or 'ends' after 'tr'");
    }
    if (ts_.at_keyword("pc")) {
      ts_.next();
      ts_.expect_keyword("in");
      ts_.expect(Tok::LBrace, "after 'pc in'");
      std::set<Label> labels;
      do {
        auto t = ts_.expect(Tok::Int, "as label");
        Label l = 0;
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), l);
        labels.insert(l);
      } while (ts_.accept(Tok::Comma));
      ts_.expect(Tok::RBrace, "to close label set");
      return Formula::pc_in(std::move(labels));
    }
    if (ts_.at_keyword("exists") && ts_.peek(1).kind == Tok::Ident) {
      ts_.next();
      std::string var = ts_.next().text;
      ts_.expect(Tok::Dot, "after quantified variable");
      return Formula::exists(std::move(var), parse_atom());
    }
    if (ts_.at(Tok::Ident)) {
      if (const auto* p = pred(ts_.peek().text)) {
        ts_.next();
        return p->formula;
      }
    }
    return Formula::store(detail::parse_comparison(ts_));
  }

  TokenStream& ts_;
  const std::vector<Value>& universe_;
  const std::map<std::string, TracePattern>& traces_;
  const std::vector<InvariantSpec>& preds_;
};

std::vector<Value> parse_value_set(TokenStream& ts) {
  std::vector<Value> out;
  ts.expect(Tok::LBrace, "to open value set");
  if (!ts.at(Tok::RBrace)) {
    do {
      out.push_back(detail::parse_value_literal(ts));
    } while (ts.accept(Tok::Comma));
  }
  ts.expect(Tok::RBrace, "to close value set");
  return out;
}

}  // namespace

const InvariantSpec& InvariantFile::checked() const {
  if (check) {
    if (const auto* p = find(*check)) return *p;
    throw Error("checked predicate '" + *check + "' is not declared");
  }
  if (predicates.empty()) throw Error("invariant file declares no predicate");
  return predicates.back();
}

const InvariantSpec* InvariantFile::find(std::string_view name) const {
  for (const auto& p : predicates) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

InvariantFile parse_invariant_file(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  InvariantFile file;
  std::optional<detail::Token> check_token;
  while (!ts.at(Tok::End)) {
    if (ts.accept_keyword("values")) {
      file.universe = parse_value_set(ts);
    } else if (ts.accept_keyword("traces")) {
      auto tok = ts.expect(Tok::Ident, "as trace set name");
      std::string name = tok.text;
      if (file.traces.count(name)) throw ParseError(tok.line, tok.column, "trace set '" + name + "' declared twice");
      ts.expect(Tok::Equals, "after trace set name");
      file.traces[name] = detail::parse_trace_pattern(ts, file.traces);
    } else if (ts.accept_keyword("pred")) {
      auto tok = ts.expect(Tok::Ident, "as predicate name");
      std::string name = tok.text;
      if (file.find(name)) throw ParseError(tok.line, tok.column, "predicate '" + name + "' declared twice");
      ts.expect(Tok::Equals, "after predicate name");
      Formula f = FormulaParser(ts, file.universe, file.traces, file.predicates).parse();
      file.predicates.push_back({std::move(f), file.universe, name});
    } else if (ts.accept_keyword("init")) {
      do {
        if (ts.accept_keyword("pc")) {
          ts.expect(Tok::Equals, "after 'pc'");
          auto t = ts.expect(Tok::Int, "as initial pc");
          Label l = 0;
          std::from_chars(t.text.data(), t.text.data() + t.text.size(), l);
          file.init_pc = l;
        } else {
          auto tok = ts.expect(Tok::Ident, "as variable name");
          std::string var = tok.text;
          for (const auto& [v, values] : file.init_store) {
            if (v == var) throw ParseError(tok.line, tok.column, "initial values for '" + var + "' given twice");
          }
          ts.expect(Tok::Equals, "after variable name");
          file.init_store.emplace_back(std::move(var), parse_value_set(ts));
        }
      } while (ts.accept(Tok::Comma));
    } else if (ts.accept_keyword("check")) {
      check_token = ts.expect(Tok::Ident, "as predicate name");
      file.check = check_token->text;
    } else {
      ts.fail("expected 'values', 'traces', 'pred', 'init' or 'check'");
    }
    ts.expect(Tok::Semicolon, "to end declaration");
  }
  if (check_token && !file.find(check_token->text)) {
    throw ParseError(check_token->line, check_token->column,
                     "checked predicate '" + check_token->text + "' is not declared");
  }
  return file;
}

InvariantSpec parse_invariant(std::string_view text, std::vector<Value> universe,
                              const std::map<std::string, TracePattern>& traces,
                              const std::vector<InvariantSpec>& preds) {
  TokenStream ts(detail::tokenize(text));
  Formula f = FormulaParser(ts, universe, traces, preds).parse();
  if (!ts.at(Tok::End)) ts.fail("unexpected '" + ts.peek().text + "' after formula");
  return {std::move(f), std::move(universe), ""};
}

}  // namespace cuc
