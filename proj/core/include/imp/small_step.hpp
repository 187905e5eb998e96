#pragma once

#include <cstddef>
#include <optional>

#include "imp/star.hpp"
#include "imp/syntax.hpp"

namespace imp {

struct ProgConfig {
  Com command;
  State state;

  bool final() const { return command.is_skip(); }

  friend bool operator==(const ProgConfig& a, const ProgConfig& b) {
    return a.state == b.state && a.command == b.command;
  }
};

using StepTrace = Trace<ProgConfig>;

// One step of the structural operational semantics; nullopt iff final.
// While unfolds to `if (b) { c; while (b) { c } } else { skip }`.
std::optional<ProgConfig> small_step(const ProgConfig& cfg);

StepTrace star_run(const ProgConfig& cfg, std::size_t max_steps);

}  // namespace imp
