#pragma once

// Denotational semantics: each piece of code denotes a set transformer.
// A leaf adds the one-step successors of the states sitting at its label;
// `c1 (+) c2` denotes the least fixpoint of
//
//     extend(d) = \S. S u d([c1](S)) u d([c2](S))
//
// under the point-wise subset order. For a concrete argument S that fixpoint
// is the least superset of S closed under [c1] and [c2]: both transformers
// are extensive, monotone and distribute over union, so the limit of the
// Kleene chain d_0 = bottom, d_{j+1} = extend(d_j) applied to S equals that
// closure. `denote` computes the closure by round-robin iteration on the
// newly found states; `kleene_trace` exposes the chain itself so the two can
// be compared.

#include <cstdint>
#include <functional>
#include <vector>

#include "cuc/ast.hpp"
#include "cuc/op.hpp"

namespace cuc {

struct DenotReport {
  StateSet states;
  /// Every (+) node closed: one more round over both components adds nothing.
  bool fixpoint_reached = false;
  /// Rounds run at the outermost node (1 for a leaf).
  std::uint64_t iterations = 0;
  bool frontier_truncated = false;
  bool state_limit_hit = false;
};

/// A semantic function, seen only through its input/output behaviour.
using Denotation = std::function<DenotReport(const StateSet&)>;

enum class ComponentOrder { LeftFirst, RightFirst };

/// S plus the unbounded successors of every state in S whose pc is li.label.
StateSet denote_leaf(const LabeledInstruction& li, const StateSet& s);

/// As above, dropping successors whose trace exceeds bounds.max_trace_len.
DenotReport denote_leaf(const LabeledInstruction& li, const StateSet& s, const Bounds& bounds);

/// Least fixpoint of extend(first, second) applied to s. Uses nothing but the
/// two component denotations. Stops unfinished after bounds.max_steps rounds
/// or once more than bounds.max_states states are known.
DenotReport seq_fixpoint(const Denotation& first, const Denotation& second, const StateSet& s,
                         const Bounds& bounds, ComponentOrder order = ComponentOrder::LeftFirst);

DenotReport denote(const CodeTree& code, const StateSet& s, const Bounds& bounds,
                   ComponentOrder order = ComponentOrder::LeftFirst);

/// The denotation of `code` as a function value.
Denotation denotation_of(const CodeTree& code, const Bounds& bounds,
                         ComponentOrder order = ComponentOrder::LeftFirst);

/// Ascending Kleene chain of a (+) node at argument s: element j holds
/// d_{j+1}(s), so element 0 is s and element 1 is s u [c1](s) u [c2](s).
/// Stops after n elements or as soon as an element equals its predecessor
/// (the stable tail is not repeated), or when an element exceeds
/// bounds.max_states. Throws cuc::Error if code is a leaf.
std::vector<StateSet> kleene_trace(const CodeTree& code, const StateSet& s, std::uint64_t n,
                                   const Bounds& bounds);

}  // namespace cuc
