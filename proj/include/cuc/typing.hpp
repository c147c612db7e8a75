#pragma once

// Two-type (int, bool) inference over expressions by unification. Variables
// carry no declarations, so every variable gets a type node that is merged
// with whatever its uses demand; a merge of int with bool is a type error.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuc/ast.hpp"

namespace cuc {

enum class Type { Int, Bool };

const char* to_string(Type t);

Type type_of(const Value& v);

class TypeInference {
 public:
  using Node = std::size_t;

  TypeInference();

  Node constant(Type t);
  Node variable(const std::string& name);
  Node fresh();

  /// Merges the two classes. Returns false on an int/bool conflict, in which
  /// case nothing is merged.
  bool unify(Node a, Node b);

  std::optional<Type> resolved(Node n);

  /// Infers the type of e, appending messages (prefixed with `where`) to
  /// `errors`. `event_node` is the type of `?ev`; when absent, `?ev` is an error.
  Node infer(const Expr& e, std::optional<Node> event_node, const std::string& where,
             std::vector<std::string>& errors);

  /// Convenience: infer and require type t.
  void expect(const Expr& e, Type t, std::optional<Node> event_node, const std::string& where,
              std::vector<std::string>& errors);

 private:
  Node find(Node n);

  std::vector<Node> parent_;
  std::vector<std::optional<Type>> type_;
  std::map<std::string, Node> vars_;
  Node int_;
  Node bool_;
};

}  // namespace cuc
