#include <gtest/gtest.h>

#include "cuc/error.hpp"
#include "cuc/typing.hpp"
#include "generators.hpp"
#include "helpers.hpp"

using namespace cuc;
using namespace cuc::testing;

namespace {

bool has_error(const ValidationReport& r, const std::string& needle) {
  for (const auto& d : r.errors) {
    if (d.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Value, ExactlyOneVariant) {
  EXPECT_TRUE(is_int(I(3)));
  EXPECT_FALSE(is_bool(I(3)));
  EXPECT_TRUE(is_bool(B(false)));
  EXPECT_EQ(to_string(I(-4)), "-4");
  EXPECT_EQ(to_string(B(true)), "true");
}

TEST(Config, CanonicalOrderIsTraceThenStoreThenPc) {
  Config a = cfg({}, {{"x", I(9)}}, 9);
  Config b = cfg({ev("a", 0)}, {{"x", I(0)}}, 0);
  EXPECT_LT(a, b);
  Config c = cfg({}, {{"x", I(1)}}, 0);
  EXPECT_LT(a, cfg({}, {{"x", I(10)}}, 0));
  EXPECT_LT(c, a);
  EXPECT_LT(cfg({}, {}, 1), cfg({}, {}, 2));
  EXPECT_EQ(to_string(cfg({ev("in", 0), ev("out", 0)}, {{"b", B(true)}, {"x", I(1)}}, 2)),
            "(<in.0, out.0>, {b: true, x: 1}, 2)");
}

TEST(Validate, BufferIsClean) {
  auto r = validate(buffer_tree());
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.errors.empty());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Validate, DuplicateLabel) {
  auto r = validate(parse("1 :: do { x := 1 }\n(+) 1 :: do { x := 2 }\n"));
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_NE(r.errors[0].message.find("duplicate label"), std::string::npos);
}

TEST(Validate, MissingTargetIsOnlyAWarning) {
  auto r = validate(parse("5 :: cbr true -> 9, 9"));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.errors.size(), 0u);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Validate, TypeErrors) {
  EXPECT_FALSE(validate(parse("1 :: do { x := 1 + true }")).ok);
  EXPECT_FALSE(validate(parse("1 :: cbr 3 -> 1, 1")).ok);
  // x is used both as int and as bool.
  EXPECT_FALSE(validate(parse("1 :: do { x := 1 }\n(+) 2 :: cbr x -> 1, 1")).ok);
  EXPECT_FALSE(validate(parse("1 :: comm { [1] a ! {0} } { a => skip }")).ok);
  // Values of one clause must share a type.
  EXPECT_FALSE(validate(parse("1 :: comm { [true] a ! {0, true} } { a => skip }")).ok);
  EXPECT_TRUE(validate(parse("1 :: do { x := if b then 1 else 2, b := x < 3 }")).ok);
}

TEST(Validate, EventValueTakesTheOfferedType) {
  EXPECT_TRUE(validate(parse("1 :: comm { [true] a ! {0, 1} } { a => x := ?ev + 1 }")).ok);
  EXPECT_FALSE(validate(parse("1 :: comm { [true] a ! {0, 1} } { a => x := !?ev }")).ok);
  EXPECT_TRUE(validate(parse("1 :: comm { [true] a ! {true} } { a => x := !?ev }")).ok);
}

TEST(Validate, EventValueOutsideAnUpdate) {
  auto r = validate(parse("1 :: do { x := ?ev }"));
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(validate(parse("1 :: comm { [true] a ! {?ev} } { a => skip }")).ok);
}

TEST(Validate, DuplicateVariableInBlockAndDuplicateUpdateChannel) {
  EXPECT_TRUE(has_error(validate(parse("1 :: do { x := 1, x := 2 }")), "x"));
  EXPECT_FALSE(validate(parse("1 :: comm { [true] a ! {0} } { a => skip; a => x := 1 }")).ok);
}

TEST(Validate, OfferWithoutUpdateWarns) {
  auto r = validate(parse("1 :: comm { [true] a ! {0} } { }"));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Validate, GeneratedProgramsAreValid) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    GeneratedProgram p = random_program(rng);
    CodeTree t = restructure(p.instrs, rng.raw());
    auto r = validate(t);
    ASSERT_TRUE(r.ok) << render(t) << (r.errors.empty() ? "" : r.errors[0].message);
  }
}

TEST(Typing, UnifyConflictLeavesClassesApart) {
  TypeInference ti;
  auto x = ti.variable("x");
  auto y = ti.variable("y");
  EXPECT_TRUE(ti.unify(x, y));
  EXPECT_TRUE(ti.unify(x, ti.constant(Type::Int)));
  EXPECT_EQ(ti.resolved(y), Type::Int);
  EXPECT_FALSE(ti.unify(y, ti.constant(Type::Bool)));
  EXPECT_EQ(ti.resolved(x), Type::Int);
  EXPECT_FALSE(ti.resolved(ti.fresh()).has_value());
}

TEST(Flatten, LeafAndBuffer) {
  auto li = leaf_of("1 :: do { x := 1 }");
  InstructionSet one = flatten(CodeTree::leaf(li));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.at(1), li.instr);
  InstructionSet b = flatten(buffer_tree());
  std::vector<Label> keys;
  for (const auto& [k, v] : b) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<Label>{1, 2, 3}));
}

TEST(Flatten, IgnoresStructure) {
  auto a = CodeTree::leaf(leaf_of("1 :: do { x := 1 }"));
  auto b = CodeTree::leaf(leaf_of("2 :: cbr true -> 1, 3"));
  auto c = CodeTree::leaf(leaf_of("3 :: do { skip }"));
  auto left = CodeTree::seq(CodeTree::seq(a, b), c);
  auto right = CodeTree::seq(a, CodeTree::seq(b, c));
  EXPECT_FALSE(left == right);
  EXPECT_EQ(flatten(left), flatten(right));
}

TEST(Flatten, DuplicateLabelThrows) {
  EXPECT_THROW(flatten(parse("1 :: do { x := 1 }\n(+) 1 :: do { skip }")), Error);
}

TEST(Structures, Counts) {
  EXPECT_EQ(count_structures(1), 1u);
  EXPECT_EQ(count_structures(2), 2u);
  EXPECT_EQ(count_structures(3), 12u);
  EXPECT_EQ(count_structures(4), 120u);
  EXPECT_EQ(count_structures(5), 1680u);
  EXPECT_EQ(count_structures(40), UINT64_MAX);
}

TEST(Restructure, SingleInstruction) {
  InstructionSet one = flatten(parse("7 :: do { x := 1 }"));
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    CodeTree t = restructure(one, seed);
    ASSERT_TRUE(t.is_leaf());
    EXPECT_EQ(t.instruction().label, 7u);
  }
}

TEST(Restructure, SeedZeroIsRightChainInLabelOrder) {
  InstructionSet b = flatten(buffer_tree());
  EXPECT_TRUE(restructure(b, 0) == buffer_tree());
}

TEST(Restructure, EnumeratesEveryStructureOfThreeAndFour) {
  for (std::size_t n : {3u, 4u}) {
    std::string text;
    for (std::size_t l = 1; l <= n; ++l) {
      text += (l > 1 ? "(+) " : "") + std::to_string(l) + " :: do { skip }\n";
    }
    InstructionSet instrs = flatten(parse(text));
    std::set<std::string> shapes;
    for (std::uint64_t seed = 0; seed < count_structures(n); ++seed) {
      CodeTree t = restructure(instrs, seed);
      EXPECT_EQ(flatten(t), instrs);
      shapes.insert(render(t));
    }
    EXPECT_EQ(shapes.size(), count_structures(n));
    EXPECT_TRUE(restructure(instrs, count_structures(n)) == restructure(instrs, 0));
  }
}

TEST(Restructure, BufferSeedsZeroAndOneDiffer) {
  InstructionSet b = flatten(buffer_tree());
  CodeTree t0 = restructure(b, 0), t1 = restructure(b, 1);
  EXPECT_FALSE(t0 == t1);
  EXPECT_EQ(flatten(t0), flatten(t1));
}

TEST(Restructure, EmptySetThrows) { EXPECT_THROW(restructure({}, 0), Error); }
