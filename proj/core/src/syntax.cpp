#include "imp/syntax.hpp"

#include <utility>
#include <vector>

namespace imp {

AExp AExp::num(Value value) {
  return AExp(std::make_shared<const AExpNode>(AExpNode{aexp::Num{value}}));
}

AExp AExp::var(Identifier name) {
  return AExp(
      std::make_shared<const AExpNode>(AExpNode{aexp::Var{std::move(name)}}));
}

AExp AExp::plus(AExp left, AExp right) {
  return AExp(std::make_shared<const AExpNode>(
      AExpNode{aexp::Plus{std::move(left), std::move(right)}}));
}

bool operator==(const AExp& lhs, const AExp& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  const auto& a = lhs.node().v;
  const auto& b = rhs.node().v;
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const aexp::Num& n) { return n.value == std::get<aexp::Num>(b).value; },
          [&](const aexp::Var& v) { return v.name == std::get<aexp::Var>(b).name; },
          [&](const aexp::Plus& p) {
            const auto& q = std::get<aexp::Plus>(b);
            return p.left == q.left && p.right == q.right;
          },
      },
      a);
}

BExp BExp::lit(bool value) {
  return BExp(std::make_shared<const BExpNode>(BExpNode{bexp::Lit{value}}));
}

BExp BExp::negate(BExp inner) {
  return BExp(
      std::make_shared<const BExpNode>(BExpNode{bexp::Not{std::move(inner)}}));
}

BExp BExp::conj(BExp left, BExp right) {
  return BExp(std::make_shared<const BExpNode>(
      BExpNode{bexp::And{std::move(left), std::move(right)}}));
}

BExp BExp::less(AExp left, AExp right) {
  return BExp(std::make_shared<const BExpNode>(
      BExpNode{bexp::Less{std::move(left), std::move(right)}}));
}

bool operator==(const BExp& lhs, const BExp& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  const auto& a = lhs.node().v;
  const auto& b = rhs.node().v;
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const bexp::Lit& l) { return l.value == std::get<bexp::Lit>(b).value; },
          [&](const bexp::Not& n) { return n.inner == std::get<bexp::Not>(b).inner; },
          [&](const bexp::And& x) {
            const auto& y = std::get<bexp::And>(b);
            return x.left == y.left && x.right == y.right;
          },
          [&](const bexp::Less& x) {
            const auto& y = std::get<bexp::Less>(b);
            return x.left == y.left && x.right == y.right;
          },
      },
      a);
}

Com Com::skip() {
  // Skip carries no data, so every Skip shares one node.
  static const std::shared_ptr<ComNode> kSkip =
      std::make_shared<ComNode>(ComNode{com::Skip{}});
  return Com(kSkip);
}

Com Com::assign(Identifier target, AExp rhs) {
  return Com(std::make_shared<ComNode>(
      ComNode{com::Assign{std::move(target), std::move(rhs)}}));
}

Com Com::seq(Com first, Com second) {
  return Com(std::make_shared<ComNode>(
      ComNode{com::Seq{std::move(first), std::move(second)}}));
}

Com Com::if_then_else(BExp cond, Com then_branch, Com else_branch) {
  return Com(std::make_shared<ComNode>(ComNode{com::If{
      std::move(cond), std::move(then_branch), std::move(else_branch)}}));
}

Com Com::while_loop(BExp cond, Com body) {
  return Com(std::make_shared<ComNode>(
      ComNode{com::While{std::move(cond), std::move(body)}}));
}

bool Com::is_skip() const {
  return std::holds_alternative<com::Skip>(node_->v);
}

ComNode::~ComNode() {
  std::vector<std::shared_ptr<ComNode>> pending;
  auto detach = [&pending](ComNode& node) {
    auto take = [&pending](Com& child) {
      if (child.node_ && child.node_.use_count() == 1) {
        pending.push_back(std::move(child.node_));
      }
    };
    std::visit(overloaded{
                   [](com::Skip&) {},
                   [](com::Assign&) {},
                   [&](com::Seq& s) {
                     take(s.first);
                     take(s.second);
                   },
                   [&](com::If& i) {
                     take(i.then_branch);
                     take(i.else_branch);
                   },
                   [&](com::While& w) { take(w.body); },
               },
               node.v);
  };
  detach(*this);
  while (!pending.empty()) {
    std::shared_ptr<ComNode> node = std::move(pending.back());
    pending.pop_back();
    detach(*node);
    // `node` now has no unshared children left and is released here.
  }
}

bool operator==(const Com& lhs, const Com& rhs) {
  std::vector<std::pair<const Com*, const Com*>> work{{&lhs, &rhs}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (a->node_ == b->node_) continue;
    const auto& x = a->node().v;
    const auto& y = b->node().v;
    if (x.index() != y.index()) return false;
    bool same = std::visit(
        overloaded{
            [&](const com::Skip&) { return true; },
            [&](const com::Assign& p) {
              const auto& q = std::get<com::Assign>(y);
              return p.target == q.target && p.rhs == q.rhs;
            },
            [&](const com::Seq& p) {
              const auto& q = std::get<com::Seq>(y);
              work.emplace_back(&p.first, &q.first);
              work.emplace_back(&p.second, &q.second);
              return true;
            },
            [&](const com::If& p) {
              const auto& q = std::get<com::If>(y);
              work.emplace_back(&p.then_branch, &q.then_branch);
              work.emplace_back(&p.else_branch, &q.else_branch);
              return p.cond == q.cond;
            },
            [&](const com::While& p) {
              const auto& q = std::get<com::While>(y);
              work.emplace_back(&p.body, &q.body);
              return p.cond == q.cond;
            },
        },
        x);
    if (!same) return false;
  }
  return true;
}

Value aval(const AExp& a, const State& s) {
  return std::visit(
      overloaded{
          [](const aexp::Num& n) { return n.value; },
          [&](const aexp::Var& v) { return s.read(v.name); },
          [&](const aexp::Plus& p) {
            return wrapping_add(aval(p.left, s), aval(p.right, s));
          },
      },
      a.node().v);
}

bool bval(const BExp& b, const State& s) {
  return std::visit(
      overloaded{
          [](const bexp::Lit& l) { return l.value; },
          [&](const bexp::Not& n) { return !bval(n.inner, s); },
          [&](const bexp::And& x) { return bval(x.left, s) && bval(x.right, s); },
          [&](const bexp::Less& x) { return aval(x.left, s) < aval(x.right, s); },
      },
      b.node().v);
}

void collect_vars(const AExp& a, std::set<Identifier>& out) {
  std::visit(overloaded{
                 [](const aexp::Num&) {},
                 [&](const aexp::Var& v) { out.insert(v.name); },
                 [&](const aexp::Plus& p) {
                   collect_vars(p.left, out);
                   collect_vars(p.right, out);
                 },
             },
             a.node().v);
}

void collect_vars(const BExp& b, std::set<Identifier>& out) {
  std::visit(overloaded{
                 [](const bexp::Lit&) {},
                 [&](const bexp::Not& n) { collect_vars(n.inner, out); },
                 [&](const bexp::And& x) {
                   collect_vars(x.left, out);
                   collect_vars(x.right, out);
                 },
                 [&](const bexp::Less& x) {
                   collect_vars(x.left, out);
                   collect_vars(x.right, out);
                 },
             },
             b.node().v);
}

namespace {

// Visits every command node without recursing on the call stack.
template <class Fn>
void for_each_command(const Com& root, Fn&& fn) {
  std::vector<const Com*> work{&root};
  while (!work.empty()) {
    const Com* c = work.back();
    work.pop_back();
    fn(*c);
    std::visit(overloaded{
                   [](const com::Skip&) {},
                   [](const com::Assign&) {},
                   [&](const com::Seq& s) {
                     work.push_back(&s.second);
                     work.push_back(&s.first);
                   },
                   [&](const com::If& i) {
                     work.push_back(&i.else_branch);
                     work.push_back(&i.then_branch);
                   },
                   [&](const com::While& w) { work.push_back(&w.body); },
               },
               c->node().v);
  }
}

std::size_t size_of(const AExp& a) {
  if (const auto* p = std::get_if<aexp::Plus>(&a.node().v)) {
    return 1 + size_of(p->left) + size_of(p->right);
  }
  return 1;
}

std::size_t size_of(const BExp& b) {
  return std::visit(
      overloaded{
          [](const bexp::Lit&) -> std::size_t { return 1; },
          [](const bexp::Not& n) -> std::size_t { return 1 + size_of(n.inner); },
          [](const bexp::And& x) -> std::size_t {
            return 1 + size_of(x.left) + size_of(x.right);
          },
          [](const bexp::Less& x) -> std::size_t {
            return 1 + size_of(x.left) + size_of(x.right);
          },
      },
      b.node().v);
}

}  // namespace

void collect_vars(const Com& c, std::set<Identifier>& out) {
  for_each_command(c, [&](const Com& node) {
    std::visit(overloaded{
                   [&](const com::Assign& a) {
                     out.insert(a.target);
                     collect_vars(a.rhs, out);
                   },
                   [&](const com::If& i) { collect_vars(i.cond, out); },
                   [&](const com::While& w) { collect_vars(w.cond, out); },
                   [](const auto&) {},
               },
               node.node().v);
  });
}

std::size_t size_of(const Com& c) {
  std::size_t total = 0;
  for_each_command(c, [&](const Com& node) {
    total += 1;
    std::visit(overloaded{
                   [&](const com::Assign& a) { total += size_of(a.rhs); },
                   [&](const com::If& i) { total += size_of(i.cond); },
                   [&](const com::While& w) { total += size_of(w.cond); },
                   [](const auto&) {},
               },
               node.node().v);
  });
  return total;
}

bool contains_loop(const Com& c) {
  bool found = false;
  for_each_command(c, [&](const Com& node) {
    found = found || std::holds_alternative<com::While>(node.node().v);
  });
  return found;
}

}  // namespace imp
