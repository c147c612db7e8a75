#include "cuc/analysis.hpp"

#include <algorithm>

#include "cuc/error.hpp"

namespace cuc {

namespace {

InvariantReport judge(const DenotReport& d, const InvariantSpec& inv) {
  InvariantReport r;
  r.exhaustive = d.fixpoint_reached;
  r.frontier_truncated = d.frontier_truncated;
  r.states_checked = d.states.size();
  // Canonical iteration order makes the first violation the least one.
  for (const auto& c : d.states) {
    if (!eval_invariant(inv, c)) {
      r.holds = false;
      r.counterexample = c;
      break;
    }
  }
  return r;
}

void require_invariant(const InvariantSpec& inv, const StateSet& s0) {
  for (const auto& c : s0) {
    if (!eval_invariant(inv, c)) {
      throw PreconditionError("initial state " + to_string(c) + " does not satisfy the invariant" +
                              (inv.name.empty() ? std::string() : " " + inv.name));
    }
  }
}

}  // namespace

InvariantReport check_invariant(const CodeTree& code, const InvariantSpec& inv, const StateSet& s0,
                                const Bounds& bounds) {
  require_invariant(inv, s0);
  return judge(denote(code, s0, bounds), inv);
}

InvOplusReport check_inv_oplus(const CodeTree& first, const CodeTree& second,
                               const InvariantSpec& inv, const StateSet& s0, const Bounds& bounds) {
  require_invariant(inv, s0);
  InvOplusReport r;
  DenotReport whole = denote(CodeTree::seq(first, second), s0, bounds);
  r.conclusion = judge(whole, inv);

  // The premises are checked from every I-state the composition can be in.
  // That is where they are used: if neither component leaves I from there,
  // no composed run can, so premises => conclusion holds on this instance.
  StateSet premise_set = s0;
  for (const auto& c : whole.states) {
    if (eval_invariant(inv, c)) premise_set.insert(c);
  }
  r.first = judge(denote(first, premise_set, bounds), inv);
  r.second = judge(denote(second, premise_set, bounds), inv);

  r.exhaustive = r.first.exhaustive && r.second.exhaustive && r.conclusion.exhaustive;
  r.holds = r.first.holds && r.second.holds && r.conclusion.holds;
  bool premises = r.first.holds && r.second.holds;
  r.rule_consistent = !(r.exhaustive && premises && !r.conclusion.holds);
  return r;
}

ConformanceReport check_conformance(const CodeTree& code, const StateSet& s0, const Bounds& bounds) {
  ConformanceReport r;
  r.denotational = denote(code, s0, bounds);
  r.operational = multistep(flatten(code), s0, bounds);
  const auto& d = r.denotational.states;
  const auto& o = r.operational.states;
  std::set_difference(d.begin(), d.end(), o.begin(), o.end(),
                      std::inserter(r.only_denotational, r.only_denotational.end()));
  std::set_difference(o.begin(), o.end(), d.begin(), d.end(),
                      std::inserter(r.only_operational, r.only_operational.end()));
  r.equal = r.only_denotational.empty() && r.only_operational.empty();
  r.exhaustive = r.denotational.fixpoint_reached && r.operational.saturated;
  return r;
}

std::optional<Config> prefix_closure_violation(const StateSet& s) {
  std::set<Trace> traces;
  for (const auto& c : s) traces.insert(c.trace);
  for (const auto& c : s) {
    for (std::size_t n = 0; n < c.trace.size(); ++n) {
      Trace prefix(c.trace.begin(), c.trace.begin() + static_cast<std::ptrdiff_t>(n));
      if (!traces.count(prefix)) return c;
    }
  }
  return std::nullopt;
}

InvariantReport check_prefix_closure(const CodeTree& code, const StateSet& s0, const Bounds& bounds) {
  if (auto bad = prefix_closure_violation(s0)) {
    throw PreconditionError("initial set is not prefix closed: " + to_string(*bad) +
                            " has a trace prefix that no initial state carries");
  }
  DenotReport d = denote(code, s0, bounds);
  InvariantReport r;
  r.exhaustive = d.fixpoint_reached;
  r.frontier_truncated = d.frontier_truncated;
  r.states_checked = d.states.size();
  r.counterexample = prefix_closure_violation(d.states);
  r.holds = !r.counterexample;
  return r;
}

}  // namespace cuc
