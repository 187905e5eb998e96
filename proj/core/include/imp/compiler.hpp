#pragma once

#include <span>

#include "imp/machine.hpp"
#include "imp/syntax.hpp"

namespace imp {

// Leaves aval(a, s) on top of the stack.
Program acomp(const AExp& a);

// Falls through when bval(b, s) != jump_if; otherwise jumps `offset`
// instructions past the end of the emitted code. Stack is unchanged.
Program bcomp(const BExp& b, bool jump_if, Value offset);

Program ccomp(const Com& c);

// True iff every jump in `program` lands in [0, |program|].
bool jump_targets_in_range(std::span<const Instr> program);

}  // namespace imp
