#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace kg2 {

/// Connectives of the language. Or, Coimpl, GNeg and Delta are definable
/// from the primitive ones; `desugar` removes them.
enum class Op : unsigned char {
  Atom,
  Top,
  Bot,
  Neg,     // !  De Morgan negation
  GNeg,    // ~  Goedel negation
  Delta,   // ^  Baaz delta
  And,     // &
  Or,      // |
  Impl,    // ->
  Coimpl,  // -<
  Box,     // []
  Dia,     // <>
};

bool is_unary(Op op);
bool is_binary(Op op);
bool is_modal(Op op);
bool is_core(Op op);

/// Immutable formula tree with structural equality and ordering.
/// Copies share nodes; all operations are pure.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula unary(Op op, Formula arg);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  static Formula neg(Formula f) { return unary(Op::Neg, std::move(f)); }
  static Formula gneg(Formula f) { return unary(Op::GNeg, std::move(f)); }
  static Formula delta(Formula f) { return unary(Op::Delta, std::move(f)); }
  static Formula box(Formula f) { return unary(Op::Box, std::move(f)); }
  static Formula dia(Formula f) { return unary(Op::Dia, std::move(f)); }
  static Formula conj(Formula a, Formula b) { return binary(Op::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Op::Or, std::move(a), std::move(b)); }
  static Formula impl(Formula a, Formula b) { return binary(Op::Impl, std::move(a), std::move(b)); }
  static Formula coimpl(Formula a, Formula b) { return binary(Op::Coimpl, std::move(a), std::move(b)); }

  Op op() const { return node_->op; }
  /// Atom name; empty for non-atoms.
  const std::string& name() const { return node_->name; }
  /// Sole argument of a unary node, or left argument of a binary one.
  const Formula& arg() const;
  const Formula& lhs() const { return arg(); }
  const Formula& rhs() const;

  /// Number of nodes in the tree.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }
  /// Node identity, usable as a memoisation key.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    std::string name;
    std::vector<Formula> kids;
    std::size_t size = 1;
    std::size_t hash = 0;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::string name, std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Parses the ASCII surface syntax.
///
///   formula := coimpl ( "->" formula )?            right-associative
///   coimpl  := disj ( "-<" disj )*                  left-associative
///   disj    := conj ( "|" conj )*
///   conj    := unary ( "&" unary )*
///   unary   := ("!" | "~" | "^" | "[]" | "<>") unary | atom | "0" | "1" | "(" formula ")"
///   atom    := [a-z][a-zA-Z0-9_]*
///
/// Throws ParseError on malformed input.
Formula parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(print(f)) == f.
std::string print(const Formula& f);

/// Expands Or, Coimpl, GNeg and Delta into Neg/And/Impl/Top/Bot.
Formula desugar(const Formula& f);

bool is_core(const Formula& f);

/// All distinct subtrees in post-order (children before parents, first occurrence wins).
std::vector<Formula> subformulas(const Formula& f);

/// Sorted, distinct atom names.
std::vector<std::string> atoms(const Formula& f);

struct ModalMetrics {
  std::size_t count = 0;  ///< number of Box/Dia nodes after desugaring
  std::size_t depth = 0;  ///< maximal Box/Dia nesting
  friend bool operator==(const ModalMetrics&, const ModalMetrics&) = default;
};

ModalMetrics modal_metrics(const Formula& f);

}  // namespace kg2
