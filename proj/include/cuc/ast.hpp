#pragma once

// Core domain types for Communicating Unstructured Code (CUC): values,
// events, traces, machine configurations, the expression language that
// concretizes the instruction functions, labeled instructions, structured
// code trees and their flat projection.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cuc {

/// Integer (64-bit signed, overflow is an error) or boolean.
using Value = std::variant<std::int64_t, bool>;

std::string to_string(const Value& v);

inline bool is_int(const Value& v) { return std::holds_alternative<std::int64_t>(v); }
inline bool is_bool(const Value& v) { return std::holds_alternative<bool>(v); }

/// A communicated event `channel.value`.
struct Event {
  std::string channel;
  Value value;

  friend auto operator<=>(const Event&, const Event&) = default;
  friend bool operator==(const Event&, const Event&) = default;
};

std::string to_string(const Event& e);

using Trace = std::vector<Event>;

std::string to_string(const Trace& tr);

/// Variable store. Ordered so that comparison is over sorted pairs.
using Store = std::map<std::string, Value>;

std::string to_string(const Store& s);

using Label = std::uint64_t;

/// Machine state: communication history, variable store, program counter.
/// Ordering is the canonical one (trace lexicographic, then store, then pc).
struct Config {
  Trace trace;
  Store store;
  Label pc = 0;

  friend auto operator<=>(const Config&, const Config&) = default;
  friend bool operator==(const Config&, const Config&) = default;
};

std::string to_string(const Config& c);

/// Finite set of configurations, iterated in canonical order.
using StateSet = std::set<Config>;

// ---------------------------------------------------------------------------
// Expressions

enum class UnaryOp { Not, Neg };
enum class BinaryOp { Add, Sub, Mul, Eq, Ne, Lt, Le, And, Or };

struct Expr {
  enum class Kind { Literal, Var, EventValue, Unary, Binary, Cond };

  Kind kind = Kind::Literal;
  Value literal{};
  std::string name;            // Var
  UnaryOp unary_op{};          // Unary
  BinaryOp binary_op{};        // Binary
  std::vector<Expr> args;      // operands; Cond is (cond, then, else)

  static Expr lit(Value v);
  static Expr var(std::string name);
  static Expr event_value();
  static Expr unary(UnaryOp op, Expr e);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr cond(Expr c, Expr then_e, Expr else_e);

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// True iff `?ev` occurs anywhere in e.
bool uses_event_value(const Expr& e);

struct Assignment {
  std::string var;
  Expr value;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Simultaneous assignment; the empty block is `skip`.
using AssignBlock = std::vector<Assignment>;

/// `[guard] channel ! {v1, ..., vn}`: offers channel.vi for each value when guard holds.
struct OfferClause {
  Expr guard;
  std::string channel;
  std::vector<Expr> values;

  friend bool operator==(const OfferClause&, const OfferClause&) = default;
};

/// State update applied after communicating on `channel`; may read `?ev`.
struct ChannelUpdate {
  std::string channel;
  AssignBlock block;

  friend bool operator==(const ChannelUpdate&, const ChannelUpdate&) = default;
};

using CommUpdate = std::vector<ChannelUpdate>;

struct Do {
  std::vector<AssignBlock> branches;
  friend bool operator==(const Do&, const Do&) = default;
};

struct Cbr {
  Expr cond;
  Label then_label = 0;
  Label else_label = 0;
  friend bool operator==(const Cbr&, const Cbr&) = default;
};

struct Comm {
  std::vector<OfferClause> offers;
  CommUpdate update;
  friend bool operator==(const Comm&, const Comm&) = default;
};

using Instruction = std::variant<Do, Cbr, Comm>;

struct LabeledInstruction {
  Label label = 0;
  Instruction instr;

  friend bool operator==(const LabeledInstruction&, const LabeledInstruction&) = default;
};

/// Structured code: a leaf labeled instruction or `left (+) right`.
/// Immutable; copies share structure.
class CodeTree {
 public:
  static CodeTree leaf(LabeledInstruction li);
  static CodeTree seq(CodeTree left, CodeTree right);

  bool is_leaf() const;
  const LabeledInstruction& instruction() const;  // requires is_leaf()
  const CodeTree& left() const;                   // requires !is_leaf()
  const CodeTree& right() const;                  // requires !is_leaf()

  /// Structural equality, including tree shape.
  friend bool operator==(const CodeTree& a, const CodeTree& b);

 private:
  struct Node;
  explicit CodeTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Leaves of the tree, left to right.
std::vector<LabeledInstruction> leaves(const CodeTree& code);

/// The unstructured projection: label -> instruction.
using InstructionSet = std::map<Label, Instruction>;

// ---------------------------------------------------------------------------
// Structural operations

struct Diagnostic {
  std::string location;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
};

/// Reports duplicate labels, type errors, misplaced `?ev`, duplicate
/// variables in one assignment block and duplicate update channels as errors;
/// dangling branch targets and offered channels without an update entry as
/// warnings. Never throws.
ValidationReport validate(const CodeTree& code);

/// Forgets the tree structure. Throws cuc::Error on a duplicate label.
InstructionSet flatten(const CodeTree& code);

/// Number of distinct trees (leaf order x association) over n leaves.
/// Saturates at UINT64_MAX.
std::uint64_t count_structures(std::size_t n);

/// Builds a tree over `instrs` whose leaf order and association are the
/// structure of rank `seed % count_structures(|instrs|)`; so seeds below that
/// count give pairwise distinct trees and seed 0 is the right-associated
/// chain in label order. Throws cuc::Error on an empty set.
CodeTree restructure(const InstructionSet& instrs, std::uint64_t seed);

}  // namespace cuc
