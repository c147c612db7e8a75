#pragma once

// Seeded random generators for programs, trees, trace specs and invariants.
// All choices go through Rng::below so a seed gives the same case on every
// platform.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cuc/ast.hpp"
#include "cuc/invariant.hpp"
#include "cuc/traceset.hpp"

namespace cuc::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool chance(unsigned percent) { return below(100) < percent; }
  std::uint64_t raw() { return engine_(); }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

 private:
  std::mt19937_64 engine_;
};

struct VarDecl {
  std::string name;
  bool is_bool = false;
};

/// A validated program over values {0, 1} with its initial store domains.
struct GeneratedProgram {
  InstructionSet instrs;
  std::vector<VarDecl> vars;
  std::vector<std::pair<std::string, std::vector<Value>>> store;
  Label pc = 1;

  StateSet initial_states() const;
};

/// 1..max_instrs instructions labeled 1..n, 1..3 variables. Every int
/// expression stays inside {0, 1}, so the store space is finite.
GeneratedProgram random_program(Rng& rng, std::size_t max_instrs = 6);

/// A random tree shape over `leaves` in the given order.
CodeTree random_shape(Rng& rng, const std::vector<LabeledInstruction>& leaves);

/// Syntax-level random trees for the parser round trip: arbitrary labels,
/// deep expressions of every form, not necessarily well typed.
CodeTree random_syntax_tree(Rng& rng);

/// Random trace patterns over `channels`, binders {x, y}, values {0, 1}.
TracePattern random_trace_pattern(Rng& rng, const std::vector<std::string>& channels = {"in", "out"},
                                  int depth = 3);

/// Random well-typed invariant over the program's variables and labels.
InvariantSpec random_invariant(Rng& rng, const GeneratedProgram& prog);

/// Random int / bool expression over the given variables, values in {0, 1}.
Expr random_int_expr(Rng& rng, const std::vector<VarDecl>& vars, int depth, bool allow_ev = false);
Expr random_bool_expr(Rng& rng, const std::vector<VarDecl>& vars, int depth, bool allow_ev = false);

}  // namespace cuc::testing
