#include "imp/machine.hpp"

#include "imp/syntax.hpp"

namespace imp {

const char* to_string(TraceStatus status) {
  return status == TraceStatus::Completed ? "Completed" : "FuelExhausted";
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::OutOfProgram:
      return "OutOfProgram";
    case StopReason::StackUnderflow:
      return "StackUnderflow";
    case StopReason::FuelExhausted:
      return "FuelExhausted";
  }
  return "?";
}

Exec1Result exec1(std::span<const Instr> program, const MachineConfig& cfg) {
  if (halted(program, cfg)) return StopReason::OutOfProgram;
  const Instr& ins = program[static_cast<std::size_t>(cfg.pc)];

  MachineConfig next = cfg;
  next.pc = wrapping_add(cfg.pc, 1);
  auto pop = [&next]() {
    Value v = next.stack.back();
    next.stack.pop_back();
    return v;
  };
  std::size_t needed = std::visit(
      overloaded{
          [](const instr::Add&) -> std::size_t { return 2; },
          [](const instr::Store&) -> std::size_t { return 1; },
          [](const instr::JmpLess&) -> std::size_t { return 2; },
          [](const instr::JmpGe&) -> std::size_t { return 2; },
          [](const auto&) -> std::size_t { return 0; },
      },
      ins);
  if (cfg.stack.size() < needed) return StopReason::StackUnderflow;

  std::visit(overloaded{
                 [&](const instr::LoadI& i) { next.stack.push_back(i.value); },
                 [&](const instr::Load& i) {
                   next.stack.push_back(cfg.state.read(i.name));
                 },
                 [&](const instr::Add&) {
                   Value top = pop();
                   Value second = pop();
                   next.stack.push_back(wrapping_add(second, top));
                 },
                 [&](const instr::Store& i) {
                   Value v = pop();
                   next.state = next.state.update(i.name, v);
                 },
                 [&](const instr::Jmp& i) {
                   next.pc = wrapping_add(next.pc, i.offset);
                 },
                 [&](const instr::JmpLess& i) {
                   Value top = pop();
                   Value second = pop();
                   if (second < top) next.pc = wrapping_add(next.pc, i.offset);
                 },
                 [&](const instr::JmpGe& i) {
                   Value top = pop();
                   Value second = pop();
                   if (second >= top) next.pc = wrapping_add(next.pc, i.offset);
                 },
             },
             ins);
  return next;
}

ExecNResult exec_n(std::span<const Instr> program, const MachineConfig& cfg,
                   std::size_t n) {
  MachineConfig current = cfg;
  for (std::size_t i = 0; i < n; ++i) {
    Exec1Result r = exec1(program, current);
    if (auto* reason = std::get_if<StopReason>(&r)) {
      return ExecNFailure{i, *reason, std::move(current)};
    }
    current = std::get<MachineConfig>(std::move(r));
  }
  return current;
}

namespace {

std::optional<MachineConfig> step_or_stop(std::span<const Instr> program,
                                          const MachineConfig& cfg) {
  Exec1Result r = exec1(program, cfg);
  if (auto* next = std::get_if<MachineConfig>(&r)) return std::move(*next);
  return std::nullopt;
}

MachineOutcome::Kind classify(std::span<const Instr> program,
                              const MachineConfig& last, TraceStatus status) {
  if (status == TraceStatus::FuelExhausted) return MachineOutcome::Kind::FuelExhausted;
  // A completed walk that stopped with pc inside the program stopped on an
  // underflow.
  return halted(program, last) ? MachineOutcome::Kind::Halted
                               : MachineOutcome::Kind::StackUnderflow;
}

}  // namespace

MachineOutcome exec(std::span<const Instr> program, const MachineConfig& cfg,
                    std::size_t fuel) {
  auto walk = star_walk(
      [program](const MachineConfig& c) { return step_or_stop(program, c); }, cfg,
      fuel, [](const MachineConfig&) {});
  MachineOutcome out;
  out.kind = classify(program, walk.last, walk.status);
  out.steps_taken = walk.steps;
  out.last = std::move(walk.last);
  return out;
}

MachineTrace exec_trace(std::span<const Instr> program, const MachineConfig& cfg,
                        std::size_t fuel) {
  auto trace = star_closure(
      [program](const MachineConfig& c) { return step_or_stop(program, c); }, cfg,
      fuel);
  MachineTrace out;
  out.kind = classify(program, trace.last(), trace.status);
  out.configs = std::move(trace.configs);
  return out;
}

std::optional<std::size_t> steps_to_halt(std::span<const Instr> program,
                                         const MachineConfig& cfg,
                                         std::size_t fuel) {
  MachineOutcome out = exec(program, cfg, fuel);
  if (!out.is_halted()) return std::nullopt;
  return out.steps_taken;
}

}  // namespace imp
