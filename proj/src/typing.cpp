#include "cuc/typing.hpp"

namespace cuc {

const char* to_string(Type t) { return t == Type::Int ? "int" : "bool"; }

Type type_of(const Value& v) { return is_int(v) ? Type::Int : Type::Bool; }

TypeInference::TypeInference() {
  int_ = fresh();
  type_[int_] = Type::Int;
  bool_ = fresh();
  type_[bool_] = Type::Bool;
}

TypeInference::Node TypeInference::constant(Type t) { return t == Type::Int ? int_ : bool_; }

TypeInference::Node TypeInference::variable(const std::string& name) {
  auto it = vars_.find(name);
  if (it != vars_.end()) return it->second;
  Node n = fresh();
  vars_.emplace(name, n);
  return n;
}

TypeInference::Node TypeInference::fresh() {
  parent_.push_back(parent_.size());
  type_.emplace_back();
  return parent_.size() - 1;
}

TypeInference::Node TypeInference::find(Node n) {
  while (parent_[n] != n) {
    parent_[n] = parent_[parent_[n]];
    n = parent_[n];
  }
  return n;
}

bool TypeInference::unify(Node a, Node b) {
  a = find(a);
  b = find(b);
  if (a == b) return true;
  if (type_[a] && type_[b] && *type_[a] != *type_[b]) return false;
  if (!type_[b]) type_[b] = type_[a];
  parent_[a] = b;
  return true;
}

std::optional<Type> TypeInference::resolved(Node n) { return type_[find(n)]; }

namespace {

const char* op_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

}  // namespace

void TypeInference::expect(const Expr& e, Type t, std::optional<Node> event_node,
                           const std::string& where, std::vector<std::string>& errors) {
  Node n = infer(e, event_node, where, errors);
  if (!unify(n, constant(t))) {
    errors.push_back(where + ": expected " + to_string(t) + " expression, found " +
                     to_string(*resolved(n)));
  }
}

TypeInference::Node TypeInference::infer(const Expr& e, std::optional<Node> event_node,
                                         const std::string& where,
                                         std::vector<std::string>& errors) {
  auto require = [&](const Expr& operand, Type t, const char* what) {
    Node n = infer(operand, event_node, where, errors);
    if (!unify(n, constant(t))) {
      errors.push_back(where + ": operand of '" + what + "' must be " + to_string(t) +
                       ", found " + to_string(*resolved(n)));
    }
  };

  switch (e.kind) {
    case Expr::Kind::Literal:
      return constant(type_of(e.literal));
    case Expr::Kind::Var:
      return variable(e.name);
    case Expr::Kind::EventValue:
      if (!event_node) {
        errors.push_back(where + ": '?ev' is only allowed inside a comm update block");
        return fresh();
      }
      return *event_node;
    case Expr::Kind::Unary:
      if (e.unary_op == UnaryOp::Not) {
        require(e.args[0], Type::Bool, "!");
        return constant(Type::Bool);
      }
      require(e.args[0], Type::Int, "-");
      return constant(Type::Int);
    case Expr::Kind::Binary: {
      const char* name = op_name(e.binary_op);
      switch (e.binary_op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
          require(e.args[0], Type::Int, name);
          require(e.args[1], Type::Int, name);
          return constant(Type::Int);
        case BinaryOp::Lt:
        case BinaryOp::Le:
          require(e.args[0], Type::Int, name);
          require(e.args[1], Type::Int, name);
          return constant(Type::Bool);
        case BinaryOp::And:
        case BinaryOp::Or:
          require(e.args[0], Type::Bool, name);
          require(e.args[1], Type::Bool, name);
          return constant(Type::Bool);
        case BinaryOp::Eq:
        case BinaryOp::Ne: {
          Node l = infer(e.args[0], event_node, where, errors);
          Node r = infer(e.args[1], event_node, where, errors);
          if (!unify(l, r)) {
            errors.push_back(where + ": operands of '" + name + "' have different types (" +
                             to_string(*resolved(l)) + " vs " + to_string(*resolved(r)) + ")");
          }
          return constant(Type::Bool);
        }
      }
      break;
    }
    case Expr::Kind::Cond: {
      require(e.args[0], Type::Bool, "if");
      Node t = infer(e.args[1], event_node, where, errors);
      Node f = infer(e.args[2], event_node, where, errors);
      if (!unify(t, f)) {
        errors.push_back(where + ": branches of 'if' have different types (" +
                         to_string(*resolved(t)) + " vs " + to_string(*resolved(f)) + ")");
      }
      return t;
    }
  }
  return fresh();
}

}  // namespace cuc
