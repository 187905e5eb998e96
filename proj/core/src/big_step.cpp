#include "imp/big_step.hpp"

#include <vector>

namespace imp {

BigStepOutcome big_step(const Com& c, const State& s, std::size_t fuel) {
  // The pending stack is the continuation of the derivation: the command on
  // top runs next, everything below runs after it in the threaded state.
  std::vector<Com> pending{c};
  State state = s;
  std::size_t used = 0;
  while (!pending.empty()) {
    if (used == fuel) return BigStepOutcome::exhausted(pending.back());
    Com cur = std::move(pending.back());
    pending.pop_back();
    ++used;
    std::visit(overloaded{
                   [](const com::Skip&) {},
                   [&](const com::Assign& a) {
                     state = state.update(a.target, aval(a.rhs, state));
                   },
                   [&](const com::Seq& q) {
                     pending.push_back(q.second);
                     pending.push_back(q.first);
                   },
                   [&](const com::If& i) {
                     pending.push_back(bval(i.cond, state) ? i.then_branch
                                                           : i.else_branch);
                   },
                   [&](const com::While& w) {
                     if (bval(w.cond, state)) {
                       pending.push_back(cur);
                       pending.push_back(w.body);
                     }
                   },
               },
               cur.node().v);
  }
  return BigStepOutcome::terminated_in(std::move(state), used);
}

bool equivalent_com(const Com& c1, const Com& c2, std::span<const State> states,
                    std::size_t fuel) {
  for (const State& s : states) {
    BigStepOutcome a = big_step(c1, s, fuel);
    BigStepOutcome b = big_step(c2, s, fuel);
    if (a.kind != b.kind) return false;
    if (a.terminated() && !(a.final_state == b.final_state)) return false;
  }
  return true;
}

}  // namespace imp
