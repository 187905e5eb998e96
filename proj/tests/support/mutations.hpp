#pragma once

#include <optional>

#include "imp/small_step.hpp"

namespace imp::mutations {

// Small step that takes the wrong branch of the conditional at the redex and
// otherwise behaves like small_step. Used to show the small/big suite is not
// vacuous.
inline std::optional<ProgConfig> swapped_if_step(const ProgConfig& cfg) {
  struct Swap {
    const State& s;
    std::optional<Com> operator()(const Com& c) const {
      if (const auto* seq = std::get_if<com::Seq>(&c.node().v)) {
        if (seq->first.is_skip()) return std::nullopt;
        std::optional<Com> head = (*this)(seq->first);
        if (!head) return std::nullopt;
        return Com::seq(*head, seq->second);
      }
      if (const auto* i = std::get_if<com::If>(&c.node().v)) {
        return bval(i->cond, s) ? i->else_branch : i->then_branch;
      }
      return std::nullopt;
    }
  };
  if (std::optional<Com> swapped = Swap{cfg.state}(cfg.command)) {
    return ProgConfig{*swapped, cfg.state};
  }
  return small_step(cfg);
}

}  // namespace imp::mutations
