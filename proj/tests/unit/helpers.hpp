#pragma once

#include <string>
#include <vector>

#include "corpus.hpp"
#include "cuc/ast.hpp"
#include "cuc/invariant.hpp"
#include "cuc/parser.hpp"

namespace cuc::testing {

inline Value I(std::int64_t v) { return v; }
inline Value B(bool v) { return v; }
inline Event ev(const std::string& ch, std::int64_t v) { return Event{ch, v}; }

inline Config cfg(Trace tr, Store s, Label pc) { return Config{std::move(tr), std::move(s), pc}; }

inline CodeTree buffer_tree() { return parse(read_text(programs_dir() + "/buffer.cuc")); }
inline CodeTree buffer_mutant_tree() { return parse(read_text(programs_dir() + "/buffer_mutant.cuc")); }
inline InvariantFile buffer_inv() { return parse_invariant_file(read_text(programs_dir() + "/buffer.inv")); }

/// {(<>, {free: false, buffer: 0}, 1)}
inline StateSet buffer_s0() { return {cfg({}, {{"free", B(false)}, {"buffer", I(0)}}, 1)}; }

inline std::set<Trace> traces_of(const StateSet& s) {
  std::set<Trace> out;
  for (const auto& c : s) out.insert(c.trace);
  return out;
}

inline std::set<Trace> buffer_traces_len2() {
  return {{}, {ev("in", 0)}, {ev("in", 1)}, {ev("in", 0), ev("out", 0)}, {ev("in", 1), ev("out", 1)}};
}

inline LabeledInstruction leaf_of(const std::string& text) { return parse(text).instruction(); }

}  // namespace cuc::testing
