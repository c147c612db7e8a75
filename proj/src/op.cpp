#include "cuc/op.hpp"

#include <limits>

#include "cuc/error.hpp"

namespace cuc {

namespace {

std::int64_t as_int(const Value& v, const char* op) {
  if (!is_int(v)) throw EvalError(std::string("operand of '") + op + "' is not an integer");
  return std::get<std::int64_t>(v);
}

bool as_bool(const Value& v, const char* op) {
  if (!is_bool(v)) throw EvalError(std::string("operand of '") + op + "' is not a boolean");
  return std::get<bool>(v);
}

template <class F>
std::int64_t checked(F builtin, std::int64_t a, std::int64_t b, const char* op) {
  std::int64_t r = 0;
  if (builtin(a, b, &r)) throw EvalError(std::string("integer overflow in '") + op + "'");
  return r;
}

bool add_ovf(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_add_overflow(a, b, r); }
bool sub_ovf(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_sub_overflow(a, b, r); }
bool mul_ovf(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_mul_overflow(a, b, r); }

}  // namespace

Value eval_expr(const Expr& e, const Store& store, const std::optional<Event>& event) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      return e.literal;
    case Expr::Kind::Var: {
      auto it = store.find(e.name);
      if (it == store.end()) throw EvalError("unbound variable '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::EventValue:
      if (!event) throw EvalError("'?ev' evaluated with no communicated event");
      return event->value;
    case Expr::Kind::Unary: {
      Value v = eval_expr(e.args[0], store, event);
      if (e.unary_op == UnaryOp::Not) return !as_bool(v, "!");
      return checked(sub_ovf, 0, as_int(v, "-"), "-");
    }
    case Expr::Kind::Binary: {
      // && and || are strict too; both operands are always evaluated.
      Value l = eval_expr(e.args[0], store, event);
      Value r = eval_expr(e.args[1], store, event);
      switch (e.binary_op) {
        case BinaryOp::Add:
          return checked(add_ovf, as_int(l, "+"), as_int(r, "+"), "+");
        case BinaryOp::Sub:
          return checked(sub_ovf, as_int(l, "-"), as_int(r, "-"), "-");
        case BinaryOp::Mul:
          return checked(mul_ovf, as_int(l, "*"), as_int(r, "*"), "*");
        case BinaryOp::Lt:
          return as_int(l, "<") < as_int(r, "<");
        case BinaryOp::Le:
          return as_int(l, "<=") <= as_int(r, "<=");
        case BinaryOp::Eq:
        case BinaryOp::Ne: {
          if (l.index() != r.index()) throw EvalError("operands of '==' have different types");
          bool eq = l == r;
          return e.binary_op == BinaryOp::Eq ? eq : !eq;
        }
        case BinaryOp::And: {
          bool a = as_bool(l, "&&");
          return as_bool(r, "&&") && a;
        }
        case BinaryOp::Or: {
          bool a = as_bool(l, "||");
          return as_bool(r, "||") || a;
        }
      }
      break;
    }
    case Expr::Kind::Cond:
      return as_bool(eval_expr(e.args[0], store, event), "if") ? eval_expr(e.args[1], store, event)
                                                              : eval_expr(e.args[2], store, event);
  }
  throw EvalError("malformed expression");
}

Store apply_block(const AssignBlock& block, const Store& store, const std::optional<Event>& event) {
  std::vector<Value> values;
  values.reserve(block.size());
  for (const auto& a : block) values.push_back(eval_expr(a.value, store, event));
  Store out = store;
  for (std::size_t i = 0; i < block.size(); ++i) out[block[i].var] = values[i];
  return out;
}

std::set<Event> offered_events(const Comm& comm, const Store& store) {
  std::set<Event> out;
  for (const auto& offer : comm.offers) {
    if (!as_bool(eval_expr(offer.guard, store), "offer guard")) continue;
    for (const auto& v : offer.values) out.insert(Event{offer.channel, eval_expr(v, store)});
  }
  return out;
}

namespace {

Label next_label(Label pc) {
  if (pc == std::numeric_limits<Label>::max()) throw EvalError("program counter overflow");
  return pc + 1;
}

}  // namespace

StateSet step_instruction(const Instruction& instr, const Config& c) {
  StateSet out;
  if (const auto* d = std::get_if<Do>(&instr)) {
    Label pc = next_label(c.pc);
    for (const auto& branch : d->branches) out.insert(Config{c.trace, apply_block(branch, c.store), pc});
  } else if (const auto* b = std::get_if<Cbr>(&instr)) {
    bool taken = as_bool(eval_expr(b->cond, c.store), "cbr");
    out.insert(Config{c.trace, c.store, taken ? b->then_label : b->else_label});
  } else {
    const auto& comm = std::get<Comm>(instr);
    Label pc = next_label(c.pc);
    for (const auto& ev : offered_events(comm, c.store)) {
      Config next{c.trace, c.store, pc};
      next.trace.push_back(ev);
      for (const auto& upd : comm.update) {
        if (upd.channel == ev.channel) {
          next.store = apply_block(upd.block, c.store, ev);
          break;
        }
      }
      out.insert(std::move(next));
    }
  }
  return out;
}

StateSet smallstep(const InstructionSet& instrs, const Config& c) {
  auto it = instrs.find(c.pc);
  if (it == instrs.end()) return {};
  try {
    return step_instruction(it->second, c);
  } catch (const EvalError& e) {
    if (e.label()) throw;
    throw EvalError(e.reason(), c.pc, to_string(c));
  }
}

ReachReport multistep(const InstructionSet& instrs, const StateSet& init, const Bounds& bounds) {
  ReachReport report;
  report.states = init;
  std::vector<const Config*> frontier;
  for (const auto& c : report.states) frontier.push_back(&c);

  std::uint64_t depth = 0;
  while (!frontier.empty()) {
    if (depth == bounds.max_steps) {
      // Out of budget: saturated only if nothing new lies one step further.
      for (const Config* c : frontier) {
        for (auto& s : smallstep(instrs, *c)) {
          if (s.trace.size() > bounds.max_trace_len) {
            report.frontier_truncated = true;
          } else if (!report.states.count(s)) {
            report.steps_used = depth;
            return report;
          }
        }
      }
      break;
    }
    std::vector<const Config*> next;
    for (const Config* c : frontier) {
      for (auto& s : smallstep(instrs, *c)) {
        if (s.trace.size() > bounds.max_trace_len) {
          report.frontier_truncated = true;
          continue;
        }
        auto [it, inserted] = report.states.insert(std::move(s));
        if (!inserted) continue;
        next.push_back(&*it);
        if (report.states.size() > bounds.max_states) {
          report.state_limit_hit = true;
          report.steps_used = depth + 1;
          return report;
        }
      }
    }
    if (!next.empty()) ++depth;
    frontier = std::move(next);
  }
  report.steps_used = depth;
  report.saturated = true;
  return report;
}

}  // namespace cuc
