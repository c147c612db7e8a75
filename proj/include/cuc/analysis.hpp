#pragma once

// Bounded, instance-level checks of the semantics' metatheory: conformance of
// the two semantics, preservation of trace-prefix closure, and the invariant
// rules. Every check runs at a concrete initial set S0; none of them claims
// the universally quantified statement.

#include <optional>

#include "cuc/ast.hpp"
#include "cuc/denot.hpp"
#include "cuc/invariant.hpp"
#include "cuc/op.hpp"

namespace cuc {

struct InvariantReport {
  bool holds = true;
  /// Least violating configuration in canonical order, when !holds.
  std::optional<Config> counterexample;
  /// The underlying fixpoint closed within the step and state budgets.
  /// Traces are explored up to max_trace_len; frontier_truncated says whether
  /// that bound cut anything off.
  bool exhaustive = false;
  bool frontier_truncated = false;
  std::size_t states_checked = 0;
};

/// Instance check of "I is preserved by [code]" at S0: every state of
/// denote(code, S0) satisfies I. Throws PreconditionError if some state of
/// S0 violates I.
InvariantReport check_invariant(const CodeTree& code, const InvariantSpec& inv, const StateSet& s0,
                                const Bounds& bounds);

struct InvOplusReport {
  /// I checked for each component, at S0 plus every I-state reachable by the
  /// composition (the sets the rule's premises quantify over that matter here).
  InvariantReport first;
  InvariantReport second;
  /// I checked for first (+) second at S0.
  InvariantReport conclusion;
  bool holds = false;
  bool exhaustive = false;
  /// False only if both premises held exhaustively while the conclusion
  /// failed, which would contradict the rule's soundness.
  bool rule_consistent = true;
};

InvOplusReport check_inv_oplus(const CodeTree& first, const CodeTree& second,
                               const InvariantSpec& inv, const StateSet& s0, const Bounds& bounds);

struct ConformanceReport {
  bool equal = false;
  StateSet only_denotational;
  StateSet only_operational;
  /// Both engines saturated.
  bool exhaustive = false;
  DenotReport denotational;
  ReachReport operational;
};

/// Compares denote(code, S0) with multistep(flatten(code), S0) under the same bounds.
ConformanceReport check_conformance(const CodeTree& code, const StateSet& s0, const Bounds& bounds);

/// Every proper prefix of every trace in s is the trace of some state in s.
/// On failure returns the least state whose trace misses a prefix.
std::optional<Config> prefix_closure_violation(const StateSet& s);

inline bool is_prefix_closed(const StateSet& s) { return !prefix_closure_violation(s); }

/// Checks that denote(code, S0) is trace-prefix-closed. Throws
/// PreconditionError if S0 is not.
InvariantReport check_prefix_closure(const CodeTree& code, const StateSet& s0, const Bounds& bounds);

}  // namespace cuc
