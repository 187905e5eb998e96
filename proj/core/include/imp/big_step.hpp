#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "imp/syntax.hpp"

namespace imp {

// Result of a fueled big-step run. Fuel counts rule applications: one per
// command node the derivation visits (a loop visits its While node once per
// test of the condition).
struct BigStepOutcome {
  enum class Kind { Terminated, FuelExhausted };

  Kind kind = Kind::Terminated;
  State final_state;             // meaningful when terminated
  std::size_t rules_applied = 0; // meaningful when terminated
  // Diagnostic only: the command that was about to run when fuel ran out.
  std::optional<Com> residual_hint;

  bool terminated() const { return kind == Kind::Terminated; }

  static BigStepOutcome terminated_in(State s, std::size_t rules) {
    return {Kind::Terminated, std::move(s), rules, std::nullopt};
  }
  static BigStepOutcome exhausted(std::optional<Com> hint = std::nullopt) {
    return {Kind::FuelExhausted, State{}, 0, std::move(hint)};
  }
};

BigStepOutcome big_step(const Com& c, const State& s, std::size_t fuel);

// Same outcome constructor on every state, and equal final states where both
// terminate.
bool equivalent_com(const Com& c1, const Com& c2, std::span<const State> states,
                    std::size_t fuel);

}  // namespace imp
