#pragma once

#include <memory>
#include <set>
#include <variant>

#include "imp/state.hpp"

namespace imp {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct AExpNode;
struct BExpNode;
struct ComNode;

// Arithmetic expressions. Handles are immutable and cheap to copy; subtrees
// are shared.
class AExp {
 public:
  static AExp num(Value value);
  static AExp var(Identifier name);
  static AExp plus(AExp left, AExp right);

  const AExpNode& node() const { return *node_; }

  friend bool operator==(const AExp& lhs, const AExp& rhs);

 private:
  explicit AExp(std::shared_ptr<const AExpNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const AExpNode> node_;
};

class BExp {
 public:
  static BExp lit(bool value);
  static BExp negate(BExp inner);
  static BExp conj(BExp left, BExp right);
  static BExp less(AExp left, AExp right);

  const BExpNode& node() const { return *node_; }

  friend bool operator==(const BExp& lhs, const BExp& rhs);

 private:
  explicit BExp(std::shared_ptr<const BExpNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const BExpNode> node_;
};

class Com {
 public:
  static Com skip();
  static Com assign(Identifier target, AExp rhs);
  static Com seq(Com first, Com second);
  static Com if_then_else(BExp cond, Com then_branch, Com else_branch);
  static Com while_loop(BExp cond, Com body);

  const ComNode& node() const { return *node_; }
  bool is_skip() const;

  // Equality is structural and iterative along `;` chains.
  friend bool operator==(const Com& lhs, const Com& rhs);

 private:
  friend struct ComNode;
  explicit Com(std::shared_ptr<ComNode> node) : node_(std::move(node)) {}
  std::shared_ptr<ComNode> node_;
};

namespace aexp {
struct Num {
  Value value;
};
struct Var {
  Identifier name;
};
struct Plus {
  AExp left;
  AExp right;
};
}  // namespace aexp

namespace bexp {
struct Lit {
  bool value;
};
struct Not {
  BExp inner;
};
struct And {
  BExp left;
  BExp right;
};
struct Less {
  AExp left;
  AExp right;
};
}  // namespace bexp

namespace com {
struct Skip {};
struct Assign {
  Identifier target;
  AExp rhs;
};
struct Seq {
  Com first;
  Com second;
};
struct If {
  BExp cond;
  Com then_branch;
  Com else_branch;
};
struct While {
  BExp cond;
  Com body;
};
}  // namespace com

struct AExpNode {
  std::variant<aexp::Num, aexp::Var, aexp::Plus> v;
};

struct BExpNode {
  std::variant<bexp::Lit, bexp::Not, bexp::And, bexp::Less> v;
};

struct ComNode {
  std::variant<com::Skip, com::Assign, com::Seq, com::If, com::While> v;

  // Tears down unshared subtrees with an explicit work-list so that very
  // long `;` chains do not exhaust the call stack.
  ~ComNode();
};

Value aval(const AExp& a, const State& s);
bool bval(const BExp& b, const State& s);

void collect_vars(const AExp& a, std::set<Identifier>& out);
void collect_vars(const BExp& b, std::set<Identifier>& out);
void collect_vars(const Com& c, std::set<Identifier>& out);

template <class T>
std::set<Identifier> vars_of(const T& term) {
  std::set<Identifier> out;
  collect_vars(term, out);
  return out;
}

// Number of AST nodes in the command, counting expression nodes too.
std::size_t size_of(const Com& c);

bool contains_loop(const Com& c);

}  // namespace imp
