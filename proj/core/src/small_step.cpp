#include "imp/small_step.hpp"

#include <vector>

namespace imp {

std::optional<ProgConfig> small_step(const ProgConfig& cfg) {
  // Descend the left spine of nested `;` to the command that actually steps,
  // then rebuild the spine around its successor.
  std::vector<const com::Seq*> spine;
  const Com* focus = &cfg.command;
  while (const auto* s = std::get_if<com::Seq>(&focus->node().v)) {
    if (s->first.is_skip()) break;
    spine.push_back(s);
    focus = &s->first;
  }

  std::optional<ProgConfig> step = std::visit(
      overloaded{
          [](const com::Skip&) -> std::optional<ProgConfig> { return std::nullopt; },
          [&](const com::Assign& a) -> std::optional<ProgConfig> {
            return ProgConfig{Com::skip(),
                              cfg.state.update(a.target, aval(a.rhs, cfg.state))};
          },
          [&](const com::Seq& s) -> std::optional<ProgConfig> {
            // Only reached with a Skip on the left.
            return ProgConfig{s.second, cfg.state};
          },
          [&](const com::If& i) -> std::optional<ProgConfig> {
            return ProgConfig{bval(i.cond, cfg.state) ? i.then_branch : i.else_branch,
                              cfg.state};
          },
          [&](const com::While& w) -> std::optional<ProgConfig> {
            Com unfolded = Com::if_then_else(
                w.cond, Com::seq(w.body, *focus), Com::skip());
            return ProgConfig{std::move(unfolded), cfg.state};
          },
      },
      focus->node().v);

  if (!step) return std::nullopt;
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
    step->command = Com::seq(std::move(step->command), (*it)->second);
  }
  return step;
}

StepTrace star_run(const ProgConfig& cfg, std::size_t max_steps) {
  return star_closure([](const ProgConfig& c) { return small_step(c); }, cfg,
                      max_steps);
}

}  // namespace imp
