#pragma once

// Assertions over configurations and the `.inv` file format.
//
//   file     := decl*
//   decl     := "values" "{" literal ("," literal)* "}" ";"
//             | "traces" NAME "=" tracespec ";"
//             | "pred" NAME "=" formula ";"
//             | "init" init_item ("," init_item)* ";"
//             | "check" NAME ";"
//   init_item:= "pc" "=" NAT | IDENT "=" "{" literal ("," literal)* "}"
//   formula  := conj ("||" conj)*
//   conj     := neg ("&&" neg)*
//   neg      := "!" neg | atom
//   atom     := "(" formula ")"
//             | "tr" "==" "<>" | "tr" "!=" "<>"
//             | "tr" "in" tracespec          -- NAME or "(" tracespec ")"
//             | "tr" "ends" CHANNEL "." unary -- last event is CHANNEL.<value>; parenthesize compound values
//             | "pc" "in" "{" NAT ("," NAT)* "}"
//             | "exists" IDENT "." atom      -- IDENT ranges over the `values` universe
//             | NAME                         -- a previously declared pred
//             | expr                         -- boolean expression over the store
//
// Bound names of `exists` shadow store variables of the same name inside the
// body. `&&` and `||` short-circuit, so `Pre || I` never evaluates I in a
// state satisfying Pre.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cuc/ast.hpp"
#include "cuc/traceset.hpp"
#include "cuc/typing.hpp"

namespace cuc {

struct Formula {
  enum class Kind { StoreExpr, PcIn, TraceEmpty, TraceIn, TraceEnds, Not, And, Or, Exists };

  Kind kind = Kind::StoreExpr;
  Expr expr;                                  // StoreExpr; value of TraceEnds
  std::set<Label> labels;                     // PcIn
  std::shared_ptr<const TraceSetSpec> spec;   // TraceIn
  std::string name;                           // TraceIn: spec name; TraceEnds: channel; Exists: variable
  std::vector<Formula> args;                  // Not (1), And/Or (2), Exists (1)

  static Formula store(Expr e);
  static Formula pc_in(std::set<Label> labels);
  static Formula trace_empty();
  static Formula trace_in(std::string name, TraceSetSpec spec);
  static Formula trace_ends(std::string channel, Expr value);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula exists(std::string var, Formula body);
};

std::string render(const Formula& f);

struct InvariantSpec {
  Formula formula;
  /// Range of `exists`.
  std::vector<Value> universe;
  std::string name;
};

/// Satisfaction of I by c. Throws EvalError on an unbound variable or a
/// non-boolean store expression.
bool eval_invariant(const InvariantSpec& inv, const Config& c);

/// Type errors of the store expressions in `inv`, with the store variables
/// typed as given. An empty result means the spec type-checks.
std::vector<std::string> typecheck(const InvariantSpec& inv,
                                   const std::map<std::string, Type>& variables);

struct InvariantFile {
  std::vector<Value> universe;
  std::map<std::string, TracePattern> traces;
  /// Predicates in declaration order.
  std::vector<InvariantSpec> predicates;
  std::optional<std::string> check;
  std::optional<Label> init_pc;
  std::vector<std::pair<std::string, std::vector<Value>>> init_store;

  /// The predicate named by `check`, or the last one declared.
  /// Throws cuc::Error if there is none.
  const InvariantSpec& checked() const;
  const InvariantSpec* find(std::string_view name) const;
};

/// Throws ParseError.
InvariantFile parse_invariant_file(std::string_view text);

/// Parses a single formula; `traces`/`preds` resolve names.
InvariantSpec parse_invariant(std::string_view text, std::vector<Value> universe,
                              const std::map<std::string, TracePattern>& traces = {},
                              const std::vector<InvariantSpec>& preds = {});

}  // namespace cuc
