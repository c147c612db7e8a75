#include <gtest/gtest.h>

#include "cli.hpp"
#include "cuc/analysis.hpp"
#include "cuc/error.hpp"
#include "generators.hpp"
#include "helpers.hpp"

using namespace cuc;
using namespace cuc::testing;

namespace {

Bounds len(std::size_t n) {
  Bounds b;
  b.max_trace_len = n;
  return b;
}

StateSet pre_states() {
  return cli::initial_states({{"free", {B(true), B(false)}}, {"buffer", {I(0), I(1)}}}, 1);
}

InvariantSpec truth() { return parse_invariant("true", {}); }

}  // namespace

TEST(CheckInvariant, BufferI123AndInv) {
  InvariantFile f = buffer_inv();
  InvariantReport r = check_invariant(buffer_tree(), f.checked(), pre_states(), len(6));
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_FALSE(r.counterexample.has_value());
  InvariantReport inv = check_invariant(buffer_tree(), *f.find("Inv"), pre_states(), len(6));
  EXPECT_TRUE(inv.holds);
}

TEST(CheckInvariant, MutantCounterexample) {
  InvariantReport r = check_invariant(buffer_mutant_tree(), buffer_inv().checked(), pre_states(), len(6));
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->trace, (Trace{ev("in", 0), ev("out", 1)}));
}

TEST(CheckInvariant, CounterexampleIsLeast) {
  CodeTree t = parse("1 :: do { x := 2 | x := 3 }");
  InvariantSpec inv = parse_invariant("x < 2", {});
  InvariantReport r = check_invariant(t, inv, {cfg({}, {{"x", I(0)}}, 1), cfg({}, {{"x", I(1)}}, 1)}, Bounds{});
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(*r.counterexample, cfg({}, {{"x", I(2)}}, 2));
}

TEST(CheckInvariant, InitialViolationIsAPreconditionError) {
  StateSet s0{cfg({ev("in", 0)}, {{"free", B(true)}, {"buffer", I(0)}}, 1)};
  EXPECT_THROW(check_invariant(buffer_tree(), buffer_inv().checked(), s0, Bounds{}), PreconditionError);
}

TEST(CheckInvariant, NotExhaustiveUnderSmallBudget) {
  Bounds b = len(6);
  b.max_steps = 1;
  InvariantReport r = check_invariant(buffer_tree(), buffer_inv().checked(), pre_states(), b);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.exhaustive);
}

TEST(InvOplus, BufferSplitAtRoot) {
  CodeTree t = buffer_tree();
  InvOplusReport r = check_inv_oplus(t.left(), t.right(), buffer_inv().checked(), pre_states(), len(6));
  EXPECT_TRUE(r.first.holds);
  EXPECT_TRUE(r.second.holds);
  EXPECT_TRUE(r.conclusion.holds);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_TRUE(r.rule_consistent);
}

TEST(InvOplus, TrueInvariantHoldsTrivially) {
  for (const auto& e : corpus()) {
    CodeTree code = load_corpus_program(e);
    if (code.is_leaf()) continue;
    InvOplusReport r = check_inv_oplus(code.left(), code.right(), truth(), corpus_initial_states(e), len(4));
    EXPECT_TRUE(r.holds) << e.file;
  }
}

// Checked only at S0, the premises would pass here (neither component moves
// from pc 1 to x = 5 alone) while the composition reaches x = 5.
TEST(InvOplus, PremisesCoverStatesTheCompositionReaches) {
  CodeTree c1 = parse("1 :: do { x := 1 }");
  CodeTree c2 = parse("2 :: do { x := 5 }");
  InvariantSpec inv = parse_invariant("x != 5", {});
  InvOplusReport r = check_inv_oplus(c1, c2, inv, {cfg({}, {{"x", I(0)}}, 1)}, Bounds{});
  EXPECT_FALSE(r.conclusion.holds);
  EXPECT_FALSE(r.second.holds);
  EXPECT_TRUE(r.rule_consistent);
}

TEST(InvOplus, RandomInstancesAreConsistent) {
  int premised = 0;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    Rng rng(seed);
    GeneratedProgram p = random_program(rng);
    if (p.instrs.size() < 2) continue;
    InvariantSpec inv = random_invariant(rng, p);
    StateSet s0;
    for (const auto& c : p.initial_states()) {
      if (eval_invariant(inv, c)) s0.insert(c);
    }
    if (s0.empty()) continue;
    CodeTree code = restructure(p.instrs, rng.raw());
    InvOplusReport r = check_inv_oplus(code.left(), code.right(), inv, s0, len(3));
    ASSERT_TRUE(r.rule_consistent) << render(code) << render(inv.formula);
    premised += r.first.holds && r.second.holds;
  }
  EXPECT_GT(premised, 50);
}

TEST(Conformance, BufferTraceLenFour) {
  ConformanceReport r = check_conformance(buffer_tree(), buffer_s0(), len(4));
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_TRUE(r.only_denotational.empty());
  EXPECT_TRUE(r.only_operational.empty());
}

TEST(Conformance, SingleLeaves) {
  for (const char* text : {"1 :: do { x := 1 - x }", "1 :: cbr x == 0 -> 1, 2",
                           "1 :: comm { [x == 0] a ! {0, 1} } { a => x := ?ev }"}) {
    for (const auto& s0 : {StateSet{}, StateSet{cfg({}, {{"x", I(0)}}, 1)},
                           StateSet{cfg({}, {{"x", I(1)}}, 1), cfg({ev("a", 1)}, {{"x", I(0)}}, 1)}}) {
      ConformanceReport r = check_conformance(parse(text), s0, len(4));
      EXPECT_TRUE(r.equal) << text;
    }
  }
}

TEST(Conformance, RandomPrograms) {
  for (std::uint64_t seed = 1000; seed < 1300; ++seed) {
    Rng rng(seed);
    GeneratedProgram p = random_program(rng);
    CodeTree code = restructure(p.instrs, rng.raw());
    ConformanceReport r = check_conformance(code, p.initial_states(), len(4));
    ASSERT_TRUE(r.exhaustive);
    ASSERT_TRUE(r.equal) << render(code);
  }
}

TEST(PrefixClosure, ViolationDetection) {
  EXPECT_TRUE(is_prefix_closed({}));
  EXPECT_TRUE(is_prefix_closed({cfg({}, {}, 1), cfg({ev("a", 0)}, {}, 7)}));
  StateSet gap{cfg({}, {}, 1), cfg({ev("a", 0), ev("b", 0)}, {}, 1)};
  EXPECT_EQ(prefix_closure_violation(gap), cfg({ev("a", 0), ev("b", 0)}, {}, 1));
}

TEST(PrefixClosure, BufferFromEmptyTraces) {
  InvariantReport r = check_prefix_closure(buffer_tree(), pre_states(), len(6));
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.exhaustive);
}

TEST(PrefixClosure, EmptyInput) {
  InvariantReport r = check_prefix_closure(buffer_tree(), {}, Bounds{});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.states_checked, 0u);
}

TEST(PrefixClosure, PreconditionChecked) {
  EXPECT_THROW(check_prefix_closure(buffer_tree(), {cfg({ev("in", 0)}, {}, 2)}, Bounds{}), PreconditionError);
}

TEST(PrefixClosure, RandomProgramsFromEmptyTraces) {
  for (std::uint64_t seed = 2000; seed < 2200; ++seed) {
    Rng rng(seed);
    GeneratedProgram p = random_program(rng);
    CodeTree code = restructure(p.instrs, rng.raw());
    ASSERT_TRUE(check_prefix_closure(code, p.initial_states(), len(4)).holds) << render(code);
  }
}
