#include "generators.hpp"

#include <algorithm>
#include <set>

#include "cli.hpp"

namespace cuc::testing {

namespace {

const std::vector<std::string> kChannels = {"a", "c"};

Expr int_leaf(Rng& rng, const std::vector<VarDecl>& vars, bool allow_ev) {
  std::vector<Expr> options = {Expr::lit(std::int64_t{0}), Expr::lit(std::int64_t{1})};
  for (const auto& v : vars) {
    if (!v.is_bool) options.push_back(Expr::var(v.name));
  }
  if (allow_ev) options.push_back(Expr::event_value());
  return rng.pick(options);
}

Expr bool_leaf(Rng& rng, const std::vector<VarDecl>& vars) {
  std::vector<Expr> options = {Expr::lit(true), Expr::lit(false)};
  for (const auto& v : vars) {
    if (v.is_bool) options.push_back(Expr::var(v.name));
  }
  return rng.pick(options);
}

AssignBlock random_block(Rng& rng, const std::vector<VarDecl>& vars, bool allow_ev) {
  AssignBlock block;
  for (const auto& v : vars) {
    if (!rng.chance(45)) continue;
    Expr e = v.is_bool ? random_bool_expr(rng, vars, 2, allow_ev) : random_int_expr(rng, vars, 2, allow_ev);
    block.push_back({v.name, std::move(e)});
  }
  return block;
}

Instruction random_instruction(Rng& rng, const std::vector<VarDecl>& vars, Label n) {
  auto kind = rng.below(100);
  if (kind < 40) {
    Do d;
    auto branches = 1 + rng.below(2);
    for (std::uint64_t i = 0; i < branches; ++i) d.branches.push_back(random_block(rng, vars, false));
    return d;
  }
  if (kind < 65) {
    return Cbr{random_bool_expr(rng, vars, 2), 1 + rng.below(n + 1), 1 + rng.below(n + 1)};
  }
  Comm c;
  auto offers = 1 + rng.below(2);
  std::set<std::string> offered;
  for (std::uint64_t i = 0; i < offers; ++i) {
    OfferClause o;
    o.guard = rng.chance(40) ? Expr::lit(true) : random_bool_expr(rng, vars, 1);
    o.channel = rng.pick(kChannels);
    auto values = 1 + rng.below(2);
    for (std::uint64_t k = 0; k < values; ++k) o.values.push_back(random_int_expr(rng, vars, 1));
    offered.insert(o.channel);
    c.offers.push_back(std::move(o));
  }
  for (const auto& ch : offered) {
    if (rng.chance(80)) c.update.push_back({ch, random_block(rng, vars, true)});
  }
  return c;
}

Expr syntax_expr(Rng& rng, int depth) {
  static const std::vector<std::string> names = {"x", "y", "zeta", "b1", "count"};
  if (depth <= 0 || rng.chance(25)) {
    switch (rng.below(5)) {
      case 0: return Expr::lit(static_cast<std::int64_t>(rng.below(41)) - 20);
      case 1: return Expr::lit(rng.chance(50));
      case 2: return Expr::event_value();
      default: return Expr::var(rng.pick(names));
    }
  }
  switch (rng.below(4)) {
    case 0:
      return Expr::unary(rng.chance(50) ? UnaryOp::Not : UnaryOp::Neg, syntax_expr(rng, depth - 1));
    case 1:
      return Expr::cond(syntax_expr(rng, depth - 1), syntax_expr(rng, depth - 1), syntax_expr(rng, depth - 1));
    default: {
      auto op = static_cast<BinaryOp>(rng.below(9));
      return Expr::binary(op, syntax_expr(rng, depth - 1), syntax_expr(rng, depth - 1));
    }
  }
}

AssignBlock syntax_block(Rng& rng) {
  static const std::vector<std::string> names = {"x", "y", "zeta", "b1", "count"};
  AssignBlock b;
  auto n = rng.below(3);
  for (std::uint64_t i = 0; i < n; ++i) b.push_back({rng.pick(names), syntax_expr(rng, 3)});
  return b;
}

Instruction syntax_instruction(Rng& rng) {
  static const std::vector<std::string> channels = {"in", "out", "ch_2", "doIt"};
  switch (rng.below(3)) {
    case 0: {
      Do d;
      auto n = 1 + rng.below(3);
      for (std::uint64_t i = 0; i < n; ++i) d.branches.push_back(syntax_block(rng));
      return d;
    }
    case 1:
      return Cbr{syntax_expr(rng, 4), rng.below(1000000), rng.below(1000)};
    default: {
      Comm c;
      auto n = 1 + rng.below(3);
      for (std::uint64_t i = 0; i < n; ++i) {
        OfferClause o{syntax_expr(rng, 2), rng.pick(channels), {}};
        auto k = 1 + rng.below(3);
        for (std::uint64_t j = 0; j < k; ++j) o.values.push_back(syntax_expr(rng, 2));
        c.offers.push_back(std::move(o));
      }
      auto u = rng.below(3);
      for (std::uint64_t i = 0; i < u; ++i) c.update.push_back({rng.pick(channels), syntax_block(rng)});
      return c;
    }
  }
}

CodeTree shape(Rng& rng, const std::vector<LabeledInstruction>& ls, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return CodeTree::leaf(ls[lo]);
  std::size_t mid = lo + 1 + rng.below(hi - lo - 1);
  return CodeTree::seq(shape(rng, ls, lo, mid), shape(rng, ls, mid, hi));
}

Formula random_formula(Rng& rng, const GeneratedProgram& prog, int depth) {
  if (depth <= 0 || rng.chance(35)) {
    switch (rng.below(6)) {
      case 0: {
        std::set<Label> labels;
        for (Label l = 1; l <= prog.instrs.size() + 1; ++l) {
          if (rng.chance(60)) labels.insert(l);
        }
        return Formula::pc_in(labels);
      }
      case 1:
        return Formula::trace_empty();
      case 2: {
        TracePattern p = random_trace_pattern(rng, kChannels, 2);
        return Formula::trace_in("", TraceSetSpec(p, {std::int64_t{0}, std::int64_t{1}}));
      }
      case 3:
        return Formula::trace_ends(rng.pick(kChannels), random_int_expr(rng, prog.vars, 1));
      case 4: {
        std::vector<VarDecl> scope = prog.vars;
        scope.push_back({"w", false});
        Expr body = Expr::binary(rng.chance(50) ? BinaryOp::Eq : BinaryOp::Le, Expr::var("w"),
                                 random_int_expr(rng, scope, 1));
        Formula f = Formula::store(body);
        if (rng.chance(50)) f = Formula::conj(Formula::trace_ends(rng.pick(kChannels), Expr::var("w")), f);
        return Formula::exists("w", f);
      }
      default:
        return Formula::store(random_bool_expr(rng, prog.vars, 2));
    }
  }
  switch (rng.below(5)) {
    case 0: return Formula::negate(random_formula(rng, prog, depth - 1));
    case 1: return Formula::conj(random_formula(rng, prog, depth - 1), random_formula(rng, prog, depth - 1));
    default: return Formula::disj(random_formula(rng, prog, depth - 1), random_formula(rng, prog, depth - 1));
  }
}

}  // namespace

StateSet GeneratedProgram::initial_states() const { return cli::initial_states(store, pc); }

Expr random_int_expr(Rng& rng, const std::vector<VarDecl>& vars, int depth, bool allow_ev) {
  if (depth <= 0 || rng.chance(50)) return int_leaf(rng, vars, allow_ev);
  switch (rng.below(3)) {
    case 0:
      return Expr::binary(BinaryOp::Sub, Expr::lit(std::int64_t{1}), random_int_expr(rng, vars, depth - 1, allow_ev));
    case 1:
      return Expr::binary(BinaryOp::Mul, random_int_expr(rng, vars, depth - 1, allow_ev),
                          random_int_expr(rng, vars, depth - 1, allow_ev));
    default:
      return Expr::cond(random_bool_expr(rng, vars, depth - 1, allow_ev),
                        random_int_expr(rng, vars, depth - 1, allow_ev),
                        random_int_expr(rng, vars, depth - 1, allow_ev));
  }
}

Expr random_bool_expr(Rng& rng, const std::vector<VarDecl>& vars, int depth, bool allow_ev) {
  if (depth <= 0 || rng.chance(35)) return bool_leaf(rng, vars);
  static const std::vector<BinaryOp> cmp = {BinaryOp::Eq, BinaryOp::Ne, BinaryOp::Lt, BinaryOp::Le};
  switch (rng.below(4)) {
    case 0: return Expr::unary(UnaryOp::Not, random_bool_expr(rng, vars, depth - 1, allow_ev));
    case 1:
      return Expr::binary(rng.chance(50) ? BinaryOp::And : BinaryOp::Or,
                          random_bool_expr(rng, vars, depth - 1, allow_ev),
                          random_bool_expr(rng, vars, depth - 1, allow_ev));
    default:
      return Expr::binary(rng.pick(cmp), random_int_expr(rng, vars, depth - 1, allow_ev),
                          random_int_expr(rng, vars, depth - 1, allow_ev));
  }
}

GeneratedProgram random_program(Rng& rng, std::size_t max_instrs) {
  GeneratedProgram p;
  std::vector<VarDecl> pool = {{"x", false}, {"y", false}, {"b", true}};
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
  p.vars.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(1 + rng.below(3)));
  for (const auto& v : p.vars) {
    std::vector<Value> values;
    if (v.is_bool) {
      if (rng.chance(70)) values.push_back(false);
      if (values.empty() || rng.chance(50)) values.push_back(true);
    } else {
      if (rng.chance(70)) values.push_back(std::int64_t{0});
      if (values.empty() || rng.chance(50)) values.push_back(std::int64_t{1});
    }
    p.store.emplace_back(v.name, std::move(values));
  }
  Label n = 1 + rng.below(max_instrs);
  for (Label l = 1; l <= n; ++l) p.instrs.emplace(l, random_instruction(rng, p.vars, n));
  p.pc = rng.chance(85) ? 1 : 1 + rng.below(n);
  return p;
}

CodeTree random_shape(Rng& rng, const std::vector<LabeledInstruction>& leaves) {
  return shape(rng, leaves, 0, leaves.size());
}

CodeTree random_syntax_tree(Rng& rng) {
  std::vector<LabeledInstruction> ls;
  auto n = 1 + rng.below(5);
  for (std::uint64_t i = 0; i < n; ++i) ls.push_back({rng.below(100000), syntax_instruction(rng)});
  return random_shape(rng, ls);
}

TracePattern random_trace_pattern(Rng& rng, const std::vector<std::string>& channels, int depth) {
  if (depth <= 0 || rng.chance(30)) {
    if (rng.chance(10)) return TracePattern::epsilon();
    ValuePattern v;
    switch (rng.below(4)) {
      case 0: v = {ValuePattern::Kind::Literal, {std::int64_t(rng.below(2))}, {}}; break;
      case 1: v = {ValuePattern::Kind::Set, {std::int64_t{0}, std::int64_t{1}}, {}}; break;
      case 2: v = {ValuePattern::Kind::Any, {}, {}}; break;
      default: v = {ValuePattern::Kind::Bind, {}, rng.chance(70) ? "x" : "y"}; break;
    }
    return TracePattern::atom(rng.pick(channels), v);
  }
  switch (rng.below(4)) {
    case 0: return TracePattern::star(random_trace_pattern(rng, channels, depth - 1));
    case 1:
      return TracePattern::alt({random_trace_pattern(rng, channels, depth - 1),
                                random_trace_pattern(rng, channels, depth - 1)});
    default: {
      std::vector<TracePattern> parts;
      auto n = 2 + rng.below(2);
      for (std::uint64_t i = 0; i < n; ++i) parts.push_back(random_trace_pattern(rng, channels, depth - 1));
      return TracePattern::concat(std::move(parts));
    }
  }
}

InvariantSpec random_invariant(Rng& rng, const GeneratedProgram& prog) {
  return InvariantSpec{random_formula(rng, prog, 2), {std::int64_t{0}, std::int64_t{1}}, "random"};
}

}  // namespace cuc::testing
