#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <variant>

#include "imp/syntax.hpp"

namespace imp {

// 1-based, inclusive start / exclusive end column.
struct SourceSpan {
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

std::string to_string(const SourceSpan& span);

enum class CmpOp { Lt, Le, Eq };

struct AssertionNode;

// Quantifier-free state predicates.
class Assertion {
 public:
  static Assertion truth();
  static Assertion falsity();
  static Assertion cmp(CmpOp op, AExp left, AExp right);
  static Assertion negate(Assertion inner);
  static Assertion conj(Assertion left, Assertion right);
  static Assertion disj(Assertion left, Assertion right);
  static Assertion implies(Assertion premise, Assertion conclusion);

  const AssertionNode& node() const { return *node_; }

  friend bool operator==(const Assertion& lhs, const Assertion& rhs);

 private:
  explicit Assertion(std::shared_ptr<const AssertionNode> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const AssertionNode> node_;
};

namespace assn {
struct True {};
struct False {};
struct Cmp {
  CmpOp op;
  AExp left;
  AExp right;
};
struct Not {
  Assertion inner;
};
struct And {
  Assertion left;
  Assertion right;
};
struct Or {
  Assertion left;
  Assertion right;
};
struct Imp {
  Assertion premise;
  Assertion conclusion;
};
}  // namespace assn

struct AssertionNode {
  std::variant<assn::True, assn::False, assn::Cmp, assn::Not, assn::And,
               assn::Or, assn::Imp>
      v;
};

bool eval_assertion(const Assertion& a, const State& s);

void collect_vars(const Assertion& a, std::set<Identifier>& out);

// Annotation attached to one `while` node.
struct LoopAnnotation {
  std::optional<Assertion> invariant;
  std::optional<AExp> measure;
  SourceSpan span;
};

// A command together with per-loop annotations, keyed by the identity of the
// While node inside `program`. Loops without an entry carry no annotation.
class AnnotatedCom {
 public:
  AnnotatedCom() : program_(Com::skip()) {}
  explicit AnnotatedCom(Com program) : program_(std::move(program)) {}

  const Com& program() const { return program_; }
  Com erase() const { return program_; }

  // `loop` must be a While node reachable from program().
  void annotate(const Com& loop, LoopAnnotation annotation);
  const LoopAnnotation* annotation_for(const Com& loop) const;

 private:
  Com program_;
  std::unordered_map<const ComNode*, LoopAnnotation> loops_;
};

}  // namespace imp
