#include "cuc/denot.hpp"

#include "cuc/error.hpp"

namespace cuc {

namespace {

template <typename Keep>
StateSet leaf_image(const LabeledInstruction& li, const StateSet& s, Keep&& keep) {
  StateSet out = s;
  for (const auto& c : s) {
    if (c.pc != li.label) continue;
    StateSet succ;
    try {
      succ = step_instruction(li.instr, c);
    } catch (const EvalError& e) {
      if (e.label()) throw;
      throw EvalError(e.reason(), c.pc, to_string(c));
    }
    for (auto& t : succ) {
      if (keep(t)) out.insert(t);
    }
  }
  return out;
}

}  // namespace

StateSet denote_leaf(const LabeledInstruction& li, const StateSet& s) {
  return leaf_image(li, s, [](const Config&) { return true; });
}

DenotReport denote_leaf(const LabeledInstruction& li, const StateSet& s, const Bounds& bounds) {
  DenotReport report;
  report.states = leaf_image(li, s, [&](const Config& t) {
    if (t.trace.size() <= bounds.max_trace_len) return true;
    report.frontier_truncated = true;
    return false;
  });
  report.fixpoint_reached = true;
  report.iterations = 1;
  return report;
}

DenotReport seq_fixpoint(const Denotation& first, const Denotation& second, const StateSet& s,
                         const Bounds& bounds, ComponentOrder order) {
  const Denotation& a = order == ComponentOrder::LeftFirst ? first : second;
  const Denotation& b = order == ComponentOrder::LeftFirst ? second : first;

  DenotReport report;
  report.states = s;
  bool children_closed = true;
  StateSet delta = s;
  StateSet fresh;

  // Both components distribute over union, so each round only needs to be
  // applied to the states found in the previous round.
  auto absorb = [&](const DenotReport& r) {
    report.frontier_truncated |= r.frontier_truncated;
    report.state_limit_hit |= r.state_limit_hit;
    children_closed &= r.fixpoint_reached;
    for (const auto& c : r.states) {
      if (report.states.insert(c).second) fresh.insert(c);
    }
    if (report.states.size() > bounds.max_states) report.state_limit_hit = true;
    return !report.state_limit_hit;
  };

  while (!delta.empty()) {
    if (report.iterations == bounds.max_steps) break;
    ++report.iterations;
    fresh.clear();
    if (!absorb(a(delta))) break;
    StateSet input = delta;
    input.insert(fresh.begin(), fresh.end());
    if (!absorb(b(input))) break;
    delta = std::move(fresh);
    fresh = {};
  }
  report.fixpoint_reached = delta.empty() && children_closed && !report.state_limit_hit;
  return report;
}

Denotation denotation_of(const CodeTree& code, const Bounds& bounds, ComponentOrder order) {
  return [code, bounds, order](const StateSet& s) { return denote(code, s, bounds, order); };
}

DenotReport denote(const CodeTree& code, const StateSet& s, const Bounds& bounds,
                   ComponentOrder order) {
  if (code.is_leaf()) return denote_leaf(code.instruction(), s, bounds);
  return seq_fixpoint(denotation_of(code.left(), bounds, order),
                      denotation_of(code.right(), bounds, order), s, bounds, order);
}

std::vector<StateSet> kleene_trace(const CodeTree& code, const StateSet& s, std::uint64_t n,
                                   const Bounds& bounds) {
  if (code.is_leaf()) throw Error("kleene_trace needs a composed (+) program, got a single leaf");
  std::vector<StateSet> chain;
  if (n == 0) return chain;
  chain.push_back(s);
  while (chain.size() < n) {
    const StateSet& prev = chain.back();
    // d_{j+1}(S) = S u d_j([c1] S) u d_j([c2] S) = d_j([c1] S u [c2] S)
    // for j >= 1, so every element is one more application of both children.
    StateSet next = denote(code.left(), prev, bounds).states;
    StateSet rhs = denote(code.right(), prev, bounds).states;
    next.insert(rhs.begin(), rhs.end());
    if (next == prev) break;
    bool too_big = next.size() > bounds.max_states;
    chain.push_back(std::move(next));
    if (too_big) break;
  }
  return chain;
}

}  // namespace cuc
