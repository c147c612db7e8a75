#pragma once

// Regular trace-set specifications over event patterns.
//
//   spec   := cat ("|" cat)*
//   cat    := post post*
//   post   := atom "*"*
//   atom   := "(" spec ")" | "eps" | CHANNEL "." value | NAME
//   value  := literal | "{" literal ("," literal)* "}" | "_" | "$" BINDER
//
// `_` matches any value, in the universe or not. A binder `$x` matches any value of the declared universe, and all
// occurrences of `$x` within one scope must match the same value. Scopes are
// the whole spec, one iteration of a `*` body, and each inlined NAME.
// Example: `(in.$x out.$x)*` is the set of traces made of pairs in.v out.v.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cuc/ast.hpp"

namespace cuc {

struct ValuePattern {
  enum class Kind { Literal, Set, Any, Bind };
  Kind kind = Kind::Any;
  std::vector<Value> values;  // Literal (one value) or Set
  std::string binder;         // Bind
};

struct TracePattern {
  enum class Kind { Epsilon, Atom, Concat, Alt, Star, Scope };
  Kind kind = Kind::Epsilon;
  std::string channel;                // Atom
  ValuePattern value;                 // Atom
  std::vector<TracePattern> parts;    // Concat, Alt; Star and Scope have one

  static TracePattern epsilon();
  static TracePattern atom(std::string channel, ValuePattern value);
  static TracePattern concat(std::vector<TracePattern> parts);
  static TracePattern alt(std::vector<TracePattern> parts);
  static TracePattern star(TracePattern body);
  static TracePattern scope(TracePattern body);
};

std::string render(const TracePattern& p);

/// A compiled specification. Binders are expanded over `universe` up front
/// and the result is matched with a Thompson NFA.
class TraceSetSpec {
 public:
  TraceSetSpec(TracePattern pattern, std::vector<Value> universe);

  bool contains(const Trace& tr) const;

  const TracePattern& pattern() const { return pattern_; }
  const std::vector<Value>& universe() const { return universe_; }

 private:
  struct Nfa;
  TracePattern pattern_;
  std::vector<Value> universe_;
  std::shared_ptr<const Nfa> nfa_;
};

bool trace_in_spec(const Trace& tr, const TraceSetSpec& spec);

/// Parses a spec; NAME atoms are looked up in `named`.
TracePattern parse_trace_pattern(std::string_view text,
                                 const std::map<std::string, TracePattern>& named = {});

}  // namespace cuc
