#pragma once

// Operational semantics: expression evaluation, the single-instruction
// successor relation, and its bounded reflexive-transitive closure.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cuc/ast.hpp"

namespace cuc {

/// Exploration budget shared by both semantics.
struct Bounds {
  /// Breadth-first depth for multistep; Kleene round budget per (+) node for denote.
  std::uint64_t max_steps = 1000;
  /// Successors whose trace would be longer are dropped (and flagged).
  std::size_t max_trace_len = 8;
  std::size_t max_states = 200000;
};

struct ReachReport {
  StateSet states;
  /// The closure stabilized without hitting max_steps or max_states.
  bool saturated = false;
  /// Number of breadth-first layers that added a state.
  std::uint64_t steps_used = 0;
  /// Some successor was dropped for exceeding max_trace_len.
  bool frontier_truncated = false;
  /// Exploration stopped because |states| exceeded max_states.
  bool state_limit_hit = false;
};

/// Strict evaluation. `?ev` reads the value of `event`. Throws EvalError on an
/// unbound variable, int overflow, a type mismatch, or `?ev` without an event.
Value eval_expr(const Expr& e, const Store& store, const std::optional<Event>& event = std::nullopt);

/// Applies a simultaneous assignment: all right-hand sides are read in `store`.
Store apply_block(const AssignBlock& block, const Store& store,
                  const std::optional<Event>& event = std::nullopt);

/// Events offered by a comm instruction in `store`, deduplicated.
std::set<Event> offered_events(const Comm& comm, const Store& store);

/// Successors of one configuration under one instruction; the caller
/// guarantees the instruction sits at c.pc.
StateSet step_instruction(const Instruction& instr, const Config& c);

/// All successors of c; empty when no instruction sits at c.pc. Evaluation
/// errors are rethrown with the label and configuration attached.
StateSet smallstep(const InstructionSet& instrs, const Config& c);

/// Bounded closure of `init` under smallstep, breadth-first by depth.
ReachReport multistep(const InstructionSet& instrs, const StateSet& init, const Bounds& bounds);

}  // namespace cuc
