#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "imp/star.hpp"
#include "imp/state.hpp"

namespace imp {

namespace instr {
struct LoadI {
  Value value;
  friend bool operator==(const LoadI&, const LoadI&) = default;
};
struct Load {
  Identifier name;
  friend bool operator==(const Load&, const Load&) = default;
};
struct Add {
  friend bool operator==(const Add&, const Add&) = default;
};
struct Store {
  Identifier name;
  friend bool operator==(const Store&, const Store&) = default;
};
// Relative jumps land at pc + 1 + offset.
struct Jmp {
  Value offset;
  friend bool operator==(const Jmp&, const Jmp&) = default;
};
struct JmpLess {
  Value offset;
  friend bool operator==(const JmpLess&, const JmpLess&) = default;
};
struct JmpGe {
  Value offset;
  friend bool operator==(const JmpGe&, const JmpGe&) = default;
};
}  // namespace instr

using Instr = std::variant<instr::LoadI, instr::Load, instr::Add, instr::Store,
                           instr::Jmp, instr::JmpLess, instr::JmpGe>;
using Program = std::vector<Instr>;

// Operand stack. The top of the stack is the *back* of the vector;
// use top_first() for the front-is-top view used in listings and traces.
using Stack = std::vector<Value>;

struct MachineConfig {
  Value pc = 0;
  State state;
  Stack stack;

  std::vector<Value> top_first() const { return {stack.rbegin(), stack.rend()}; }

  friend bool operator==(const MachineConfig&, const MachineConfig&) = default;
};

enum class StopReason { OutOfProgram, StackUnderflow, FuelExhausted };

const char* to_string(StopReason reason);

// A machine cannot step when pc is outside [0, |P|) (normal halt) or when the
// instruction at pc needs more operands than the stack holds.
using Exec1Result = std::variant<MachineConfig, StopReason>;

Exec1Result exec1(std::span<const Instr> program, const MachineConfig& cfg);

// Halts iff pc lies outside the program. A negative pc halts too.
inline bool halted(std::span<const Instr> program, const MachineConfig& cfg) {
  return cfg.pc < 0 || cfg.pc >= static_cast<Value>(program.size());
}

struct ExecNFailure {
  std::size_t steps_completed = 0;
  StopReason reason = StopReason::OutOfProgram;
  MachineConfig last;
};

using ExecNResult = std::variant<MachineConfig, ExecNFailure>;

// Exactly n successful exec1 applications.
ExecNResult exec_n(std::span<const Instr> program, const MachineConfig& cfg,
                   std::size_t n);

struct MachineOutcome {
  enum class Kind { Halted, StackUnderflow, FuelExhausted };

  Kind kind = Kind::Halted;
  MachineConfig last;
  std::size_t steps_taken = 0;

  bool is_halted() const { return kind == Kind::Halted; }
};

MachineOutcome exec(std::span<const Instr> program, const MachineConfig& cfg,
                    std::size_t fuel);

// Same iteration as exec() but keeps every visited configuration.
struct MachineTrace {
  std::vector<MachineConfig> configs;
  MachineOutcome::Kind kind = MachineOutcome::Kind::Halted;
};

MachineTrace exec_trace(std::span<const Instr> program, const MachineConfig& cfg,
                        std::size_t fuel);

// The step count n for which exec_n reproduces exec's halted configuration.
std::optional<std::size_t> steps_to_halt(std::span<const Instr> program,
                                         const MachineConfig& cfg,
                                         std::size_t fuel);

}  // namespace imp
