#pragma once

// Reference implementations used as test oracles. They are written
// independently of the library (plain recursion over std::map states) so a
// shared bug cannot make both sides agree.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "imp/syntax.hpp"

namespace oracle {

using Env = std::map<std::string, std::int64_t>;

inline std::int64_t read(const Env& env, const std::string& x) {
  auto it = env.find(x);
  return it == env.end() ? 0 : it->second;
}

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                   static_cast<std::uint64_t>(b));
}

inline std::int64_t aval(const imp::AExp& a, const Env& env) {
  if (auto* n = std::get_if<imp::aexp::Num>(&a.node().v)) return n->value;
  if (auto* v = std::get_if<imp::aexp::Var>(&a.node().v)) return read(env, v->name);
  const auto& p = std::get<imp::aexp::Plus>(a.node().v);
  return add(aval(p.left, env), aval(p.right, env));
}

inline bool bval(const imp::BExp& b, const Env& env) {
  if (auto* l = std::get_if<imp::bexp::Lit>(&b.node().v)) return l->value;
  if (auto* n = std::get_if<imp::bexp::Not>(&b.node().v)) return !bval(n->inner, env);
  if (auto* c = std::get_if<imp::bexp::And>(&b.node().v)) {
    bool left = bval(c->left, env);
    bool right = bval(c->right, env);
    return left && right;
  }
  const auto& l = std::get<imp::bexp::Less>(b.node().v);
  return aval(l.left, env) < aval(l.right, env);
}

// Textbook recursive big-step. `rules` counts rule applications; returns
// nullopt once more than `fuel` rules would be needed.
inline bool run(const imp::Com& c, Env& env, std::size_t& rules, std::size_t fuel) {
  if (++rules > fuel) return false;
  const auto& v = c.node().v;
  if (std::holds_alternative<imp::com::Skip>(v)) return true;
  if (auto* a = std::get_if<imp::com::Assign>(&v)) {
    env[a->target] = aval(a->rhs, env);
    return true;
  }
  if (auto* s = std::get_if<imp::com::Seq>(&v)) {
    return run(s->first, env, rules, fuel) && run(s->second, env, rules, fuel);
  }
  if (auto* i = std::get_if<imp::com::If>(&v)) {
    return run(bval(i->cond, env) ? i->then_branch : i->else_branch, env, rules, fuel);
  }
  const auto& w = std::get<imp::com::While>(v);
  if (!bval(w.cond, env)) return true;
  return run(w.body, env, rules, fuel) && run(c, env, rules, fuel);
}

struct Result {
  Env env;
  std::size_t rules;
};

inline std::optional<Result> big_step(const imp::Com& c, Env env, std::size_t fuel) {
  std::size_t rules = 0;
  if (!run(c, env, rules, fuel)) return std::nullopt;
  return Result{std::move(env), rules};
}

inline Env to_env(const imp::State& s) {
  Env env;
  for (const auto& [k, v] : s.bindings()) env[k] = v;
  return env;
}

// Extensional comparison (missing names read as 0).
inline bool same(const Env& env, const imp::State& s) {
  for (const auto& [k, v] : env) {
    if (s.read(k) != v) return false;
  }
  for (const auto& [k, v] : s.bindings()) {
    if (read(env, k) != v) return false;
  }
  return true;
}

}  // namespace oracle
