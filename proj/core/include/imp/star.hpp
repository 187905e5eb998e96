#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace imp {

enum class TraceStatus { Completed, FuelExhausted };

const char* to_string(TraceStatus status);

template <class Config>
struct Trace {
  std::vector<Config> configs;  // never empty
  TraceStatus status = TraceStatus::Completed;

  std::size_t steps() const { return configs.size() - 1; }
  const Config& last() const { return configs.back(); }
};

template <class Config>
struct WalkResult {
  Config last;
  std::size_t steps = 0;
  TraceStatus status = TraceStatus::Completed;
};

// Reflexive-transitive iteration of a deterministic step function
// `step: const Config& -> std::optional<Config>`, taking at most `fuel` steps.
// `visit` sees the start configuration and then every successor in order.
//
// Completed means the last configuration has no successor. FuelExhausted means
// the budget ran out while a successor still existed.
template <class Config, class StepFn, class Visit>
WalkResult<Config> star_walk(StepFn&& step, Config start, std::size_t fuel,
                             Visit&& visit) {
  visit(static_cast<const Config&>(start));
  WalkResult<Config> result{std::move(start), 0, TraceStatus::Completed};
  while (true) {
    std::optional<Config> next = step(static_cast<const Config&>(result.last));
    if (!next) return result;
    if (result.steps == fuel) {
      result.status = TraceStatus::FuelExhausted;
      return result;
    }
    result.last = std::move(*next);
    ++result.steps;
    visit(static_cast<const Config&>(result.last));
  }
}

template <class Config, class StepFn>
Trace<Config> star_closure(StepFn&& step, Config start, std::size_t fuel) {
  Trace<Config> trace;
  auto walk = star_walk(std::forward<StepFn>(step), std::move(start), fuel,
                        [&](const Config& c) { trace.configs.push_back(c); });
  trace.status = walk.status;
  return trace;
}

}  // namespace imp
