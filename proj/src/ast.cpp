#include "cuc/ast.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "cuc/error.hpp"
#include "cuc/typing.hpp"

namespace cuc {

std::string to_string(const Value& v) {
  if (is_bool(v)) return std::get<bool>(v) ? "true" : "false";
  return std::to_string(std::get<std::int64_t>(v));
}

std::string to_string(const Event& e) { return e.channel + "." + to_string(e.value); }

std::string to_string(const Trace& tr) {
  std::string out = "<";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (i) out += ", ";
    out += to_string(tr[i]);
  }
  return out + ">";
}

std::string to_string(const Store& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s) {
    if (!first) out += ", ";
    first = false;
    out += k + ": " + to_string(v);
  }
  return out + "}";
}

std::string to_string(const Config& c) {
  return "(" + to_string(c.trace) + ", " + to_string(c.store) + ", " + std::to_string(c.pc) + ")";
}

// ---------------------------------------------------------------------------

Expr Expr::lit(Value v) {
  Expr e;
  e.kind = Kind::Literal;
  e.literal = v;
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

Expr Expr::event_value() {
  Expr e;
  e.kind = Kind::EventValue;
  return e;
}

Expr Expr::unary(UnaryOp op, Expr operand) {
  Expr e;
  e.kind = Kind::Unary;
  e.unary_op = op;
  e.args.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Binary;
  e.binary_op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::cond(Expr c, Expr then_e, Expr else_e) {
  Expr e;
  e.kind = Kind::Cond;
  e.args.push_back(std::move(c));
  e.args.push_back(std::move(then_e));
  e.args.push_back(std::move(else_e));
  return e;
}

bool uses_event_value(const Expr& e) {
  if (e.kind == Expr::Kind::EventValue) return true;
  return std::any_of(e.args.begin(), e.args.end(), uses_event_value);
}

// ---------------------------------------------------------------------------

struct CodeTree::Node {
  std::variant<LabeledInstruction, std::pair<CodeTree, CodeTree>> content;
};

CodeTree CodeTree::leaf(LabeledInstruction li) {
  return CodeTree(std::make_shared<const Node>(Node{std::move(li)}));
}

CodeTree CodeTree::seq(CodeTree left, CodeTree right) {
  return CodeTree(std::make_shared<const Node>(
      Node{std::make_pair(std::move(left), std::move(right))}));
}

bool CodeTree::is_leaf() const {
  return std::holds_alternative<LabeledInstruction>(node_->content);
}

const LabeledInstruction& CodeTree::instruction() const {
  return std::get<LabeledInstruction>(node_->content);
}

const CodeTree& CodeTree::left() const {
  return std::get<std::pair<CodeTree, CodeTree>>(node_->content).first;
}

const CodeTree& CodeTree::right() const {
  return std::get<std::pair<CodeTree, CodeTree>>(node_->content).second;
}

bool operator==(const CodeTree& a, const CodeTree& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.instruction() == b.instruction();
  return a.left() == b.left() && a.right() == b.right();
}

namespace {

void collect_leaves(const CodeTree& t, std::vector<LabeledInstruction>& out) {
  if (t.is_leaf()) {
    out.push_back(t.instruction());
    return;
  }
  collect_leaves(t.left(), out);
  collect_leaves(t.right(), out);
}

}  // namespace

std::vector<LabeledInstruction> leaves(const CodeTree& code) {
  std::vector<LabeledInstruction> out;
  collect_leaves(code, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Validator {
 public:
  ValidationReport run(const CodeTree& code) {
    auto ls = leaves(code);
    std::set<Label> labels;
    for (const auto& li : ls) {
      if (!labels.insert(li.label).second) {
        error("label " + std::to_string(li.label), "duplicate label " + std::to_string(li.label));
      }
    }
    for (const auto& li : ls) {
      const std::string where = "label " + std::to_string(li.label);
      std::visit([&](const auto& instr) { check(instr, where, labels); }, li.instr);
    }
    for (auto& msg : type_errors_) {
      auto colon = msg.find(": ");
      report_.errors.push_back({msg.substr(0, colon), msg.substr(colon + 2)});
    }
    report_.ok = report_.errors.empty();
    return std::move(report_);
  }

 private:
  void error(std::string loc, std::string msg) { report_.errors.push_back({loc, msg}); }
  void warning(std::string loc, std::string msg) { report_.warnings.push_back({loc, msg}); }

  void check_block(const AssignBlock& block, std::optional<TypeInference::Node> ev,
                   const std::string& where) {
    std::set<std::string> seen;
    for (const auto& a : block) {
      if (!seen.insert(a.var).second) {
        error(where, "variable '" + a.var + "' assigned twice in one block");
      }
      auto rhs = types_.infer(a.value, ev, where, type_errors_);
      auto lhs = types_.variable(a.var);
      if (!types_.unify(lhs, rhs)) {
        type_errors_.push_back(where + ": cannot assign " + to_string(*types_.resolved(rhs)) +
                               " to '" + a.var + "' of type " +
                               to_string(*types_.resolved(lhs)));
      }
    }
  }

  void check(const Do& d, const std::string& where, const std::set<Label>&) {
    if (d.branches.empty()) error(where, "do needs at least one branch");
    for (const auto& b : d.branches) check_block(b, std::nullopt, where);
  }

  void check(const Cbr& c, const std::string& where, const std::set<Label>& labels) {
    types_.expect(c.cond, Type::Bool, std::nullopt, where, type_errors_);
    std::set<Label> targets{c.then_label, c.else_label};
    for (Label target : targets) {
      if (!labels.count(target)) {
        warning(where, "branch target " + std::to_string(target) + " has no instruction");
      }
    }
  }

  void check(const Comm& c, const std::string& where, const std::set<Label>&) {
    if (c.offers.empty()) error(where, "comm needs at least one offer clause");
    std::map<std::string, std::vector<TypeInference::Node>> offered;
    for (std::size_t i = 0; i < c.offers.size(); ++i) {
      const auto& offer = c.offers[i];
      const std::string loc = where + " offer " + std::to_string(i + 1);
      types_.expect(offer.guard, Type::Bool, std::nullopt, loc, type_errors_);
      if (offer.values.empty()) error(loc, "offer clause needs at least one value");
      auto clause_type = types_.fresh();
      for (const auto& v : offer.values) {
        auto n = types_.infer(v, std::nullopt, loc, type_errors_);
        if (!types_.unify(clause_type, n)) {
          type_errors_.push_back(loc + ": offered values on '" + offer.channel +
                                 "' mix int and bool");
        }
      }
      offered[offer.channel].push_back(clause_type);
    }
    std::set<std::string> updated;
    for (const auto& upd : c.update) {
      const std::string loc = where + " update '" + upd.channel + "'";
      if (!updated.insert(upd.channel).second) {
        error(where, "duplicate update for channel '" + upd.channel + "'");
      }
      auto ev = types_.fresh();
      bool reads_event = std::any_of(upd.block.begin(), upd.block.end(),
                                     [](const Assignment& a) { return uses_event_value(a.value); });
      if (reads_event) {
        for (auto n : offered[upd.channel]) {
          if (!types_.unify(ev, n)) {
            type_errors_.push_back(loc + ": '?ev' has both int and bool values on '" +
                                   upd.channel + "'");
          }
        }
      }
      check_block(upd.block, ev, loc);
    }
    for (const auto& [channel, _] : offered) {
      if (!updated.count(channel)) {
        warning(where, "channel '" + channel + "' is offered but has no update entry");
      }
    }
  }

  ValidationReport report_;
  TypeInference types_;
  std::vector<std::string> type_errors_;
};

}  // namespace

ValidationReport validate(const CodeTree& code) { return Validator{}.run(code); }

InstructionSet flatten(const CodeTree& code) {
  InstructionSet out;
  for (auto& li : leaves(code)) {
    if (!out.emplace(li.label, std::move(li.instr)).second) {
      throw Error("duplicate label " + std::to_string(li.label));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

// Number of binary tree shapes with n ordered leaves (Catalan(n - 1)).
std::uint64_t count_shapes(std::size_t n) {
  std::vector<std::uint64_t> c(n + 1, 0);
  c[1] = 1;
  for (std::size_t m = 2; m <= n; ++m) {
    for (std::size_t k = 1; k < m; ++k) c[m] = sat_add(c[m], sat_mul(c[k], c[m - k]));
  }
  return c[n];
}

CodeTree unrank_shape(const std::vector<LabeledInstruction>& order, std::size_t lo, std::size_t n,
                      std::uint64_t rank) {
  if (n == 1) return CodeTree::leaf(order[lo]);
  for (std::size_t k = 1; k < n; ++k) {
    std::uint64_t right_count = count_shapes(n - k);
    std::uint64_t block = sat_mul(count_shapes(k), right_count);
    if (rank < block || k == n - 1) {
      return CodeTree::seq(unrank_shape(order, lo, k, rank / right_count),
                           unrank_shape(order, lo + k, n - k, rank % right_count));
    }
    rank -= block;
  }
  return CodeTree::leaf(order[lo]);  // unreachable
}

}  // namespace

std::uint64_t count_structures(std::size_t n) {
  if (n == 0) return 0;
  std::uint64_t perms = 1;
  for (std::size_t i = 2; i <= n; ++i) perms = sat_mul(perms, i);
  return sat_mul(perms, count_shapes(n));
}

CodeTree restructure(const InstructionSet& instrs, std::uint64_t seed) {
  if (instrs.empty()) throw Error("cannot restructure an empty instruction set");
  const std::size_t n = instrs.size();
  const std::uint64_t total = count_structures(n);
  std::uint64_t rank = total == kSaturated ? seed : seed % total;

  // Low digits select the association shape, the rest the leaf order, so
  // consecutive seeds first vary association.
  const std::uint64_t shapes = count_shapes(n);
  std::uint64_t shape_rank = rank % shapes;
  std::uint64_t perm_rank = rank / shapes;

  std::vector<LabeledInstruction> pool;
  for (const auto& [label, instr] : instrs) pool.push_back({label, instr});

  // Lehmer-code unranking, most significant digit first.
  std::vector<LabeledInstruction> order;
  order.reserve(n);
  std::vector<std::uint64_t> fact(n, 1);
  for (std::size_t i = 1; i < n; ++i) fact[i] = sat_mul(fact[i - 1], i);
  for (std::size_t i = n; i > 0; --i) {
    std::uint64_t f = fact[i - 1];
    std::size_t idx = f == kSaturated ? 0 : static_cast<std::size_t>((perm_rank / f) % i);
    if (f != kSaturated) perm_rank %= f;
    order.push_back(std::move(pool[idx]));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return unrank_shape(order, 0, n, shape_rank);
}

}  // namespace cuc
