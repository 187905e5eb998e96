#include "imp/assertion.hpp"

namespace imp {

std::string to_string(const SourceSpan& span) {
  return std::to_string(span.start_line) + ":" + std::to_string(span.start_col) +
         "-" + std::to_string(span.end_line) + ":" + std::to_string(span.end_col);
}

Assertion Assertion::truth() {
  static const Assertion kTrue(
      std::make_shared<const AssertionNode>(AssertionNode{assn::True{}}));
  return kTrue;
}

Assertion Assertion::falsity() {
  static const Assertion kFalse(
      std::make_shared<const AssertionNode>(AssertionNode{assn::False{}}));
  return kFalse;
}

Assertion Assertion::cmp(CmpOp op, AExp left, AExp right) {
  return Assertion(std::make_shared<const AssertionNode>(
      AssertionNode{assn::Cmp{op, std::move(left), std::move(right)}}));
}

Assertion Assertion::negate(Assertion inner) {
  return Assertion(std::make_shared<const AssertionNode>(
      AssertionNode{assn::Not{std::move(inner)}}));
}

Assertion Assertion::conj(Assertion left, Assertion right) {
  return Assertion(std::make_shared<const AssertionNode>(
      AssertionNode{assn::And{std::move(left), std::move(right)}}));
}

Assertion Assertion::disj(Assertion left, Assertion right) {
  return Assertion(std::make_shared<const AssertionNode>(
      AssertionNode{assn::Or{std::move(left), std::move(right)}}));
}

Assertion Assertion::implies(Assertion premise, Assertion conclusion) {
  return Assertion(std::make_shared<const AssertionNode>(
      AssertionNode{assn::Imp{std::move(premise), std::move(conclusion)}}));
}

bool operator==(const Assertion& lhs, const Assertion& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  const auto& a = lhs.node().v;
  const auto& b = rhs.node().v;
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [](const assn::True&) { return true; },
          [](const assn::False&) { return true; },
          [&](const assn::Cmp& x) {
            const auto& y = std::get<assn::Cmp>(b);
            return x.op == y.op && x.left == y.left && x.right == y.right;
          },
          [&](const assn::Not& x) { return x.inner == std::get<assn::Not>(b).inner; },
          [&](const assn::And& x) {
            const auto& y = std::get<assn::And>(b);
            return x.left == y.left && x.right == y.right;
          },
          [&](const assn::Or& x) {
            const auto& y = std::get<assn::Or>(b);
            return x.left == y.left && x.right == y.right;
          },
          [&](const assn::Imp& x) {
            const auto& y = std::get<assn::Imp>(b);
            return x.premise == y.premise && x.conclusion == y.conclusion;
          },
      },
      a);
}

bool eval_assertion(const Assertion& a, const State& s) {
  return std::visit(
      overloaded{
          [](const assn::True&) { return true; },
          [](const assn::False&) { return false; },
          [&](const assn::Cmp& c) {
            Value l = aval(c.left, s);
            Value r = aval(c.right, s);
            switch (c.op) {
              case CmpOp::Lt:
                return l < r;
              case CmpOp::Le:
                return l <= r;
              case CmpOp::Eq:
                return l == r;
            }
            return false;
          },
          [&](const assn::Not& n) { return !eval_assertion(n.inner, s); },
          [&](const assn::And& x) {
            return eval_assertion(x.left, s) && eval_assertion(x.right, s);
          },
          [&](const assn::Or& x) {
            return eval_assertion(x.left, s) || eval_assertion(x.right, s);
          },
          [&](const assn::Imp& x) {
            return !eval_assertion(x.premise, s) || eval_assertion(x.conclusion, s);
          },
      },
      a.node().v);
}

void collect_vars(const Assertion& a, std::set<Identifier>& out) {
  std::visit(overloaded{
                 [](const assn::True&) {},
                 [](const assn::False&) {},
                 [&](const assn::Cmp& c) {
                   collect_vars(c.left, out);
                   collect_vars(c.right, out);
                 },
                 [&](const assn::Not& n) { collect_vars(n.inner, out); },
                 [&](const assn::And& x) {
                   collect_vars(x.left, out);
                   collect_vars(x.right, out);
                 },
                 [&](const assn::Or& x) {
                   collect_vars(x.left, out);
                   collect_vars(x.right, out);
                 },
                 [&](const assn::Imp& x) {
                   collect_vars(x.premise, out);
                   collect_vars(x.conclusion, out);
                 },
             },
             a.node().v);
}

void AnnotatedCom::annotate(const Com& loop, LoopAnnotation annotation) {
  loops_.insert_or_assign(&loop.node(), std::move(annotation));
}

const LoopAnnotation* AnnotatedCom::annotation_for(const Com& loop) const {
  auto it = loops_.find(&loop.node());
  return it == loops_.end() ? nullptr : &it->second;
}

}  // namespace imp
