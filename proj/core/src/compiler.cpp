#include "imp/compiler.hpp"

#include <iterator>

namespace imp {

namespace {

void append(Program& out, Program code) {
  out.insert(out.end(), std::make_move_iterator(code.begin()),
             std::make_move_iterator(code.end()));
}

Value length(const Program& p) { return static_cast<Value>(p.size()); }

void emit_aexp(const AExp& a, Program& out) {
  std::visit(overloaded{
                 [&](const aexp::Num& n) { out.push_back(instr::LoadI{n.value}); },
                 [&](const aexp::Var& v) { out.push_back(instr::Load{v.name}); },
                 [&](const aexp::Plus& p) {
                   emit_aexp(p.left, out);
                   emit_aexp(p.right, out);
                   out.push_back(instr::Add{});
                 },
             },
             a.node().v);
}

}  // namespace

Program acomp(const AExp& a) {
  Program out;
  emit_aexp(a, out);
  return out;
}

Program bcomp(const BExp& b, bool jump_if, Value offset) {
  return std::visit(
      overloaded{
          [&](const bexp::Lit& l) -> Program {
            if (l.value == jump_if) return {instr::Jmp{offset}};
            return {};
          },
          [&](const bexp::Not& n) { return bcomp(n.inner, !jump_if, offset); },
          [&](const bexp::And& x) {
            Program right = bcomp(x.right, jump_if, offset);
            // Short circuit: a false left operand skips the right operand, and
            // also the target distance when jumping on false.
            Value skip = jump_if ? length(right) : length(right) + offset;
            Program out = bcomp(x.left, false, skip);
            append(out, std::move(right));
            return out;
          },
          [&](const bexp::Less& x) {
            Program out = acomp(x.left);
            append(out, acomp(x.right));
            if (jump_if) {
              out.push_back(instr::JmpLess{offset});
            } else {
              out.push_back(instr::JmpGe{offset});
            }
            return out;
          },
      },
      b.node().v);
}

Program ccomp(const Com& c) {
  Program out;
  // `;` chains are walked iteratively; other constructs recurse.
  const Com* cur = &c;
  while (const auto* s = std::get_if<com::Seq>(&cur->node().v)) {
    append(out, ccomp(s->first));
    cur = &s->second;
  }
  std::visit(overloaded{
                 [](const com::Skip&) {},
                 [](const com::Seq&) {},
                 [&](const com::Assign& a) {
                   append(out, acomp(a.rhs));
                   out.push_back(instr::Store{a.target});
                 },
                 [&](const com::If& i) {
                   Program then_code = ccomp(i.then_branch);
                   Program else_code = ccomp(i.else_branch);
                   append(out, bcomp(i.cond, false, length(then_code) + 1));
                   Value else_len = length(else_code);
                   append(out, std::move(then_code));
                   out.push_back(instr::Jmp{else_len});
                   append(out, std::move(else_code));
                 },
                 [&](const com::While& w) {
                   Program body = ccomp(w.body);
                   Program cond = bcomp(w.cond, false, length(body) + 1);
                   Value back = -(length(cond) + length(body) + 1);
                   append(out, std::move(cond));
                   append(out, std::move(body));
                   out.push_back(instr::Jmp{back});
                 },
             },
             cur->node().v);
  return out;
}

bool jump_targets_in_range(std::span<const Instr> program) {
  const auto size = static_cast<Value>(program.size());
  for (std::size_t pc = 0; pc < program.size(); ++pc) {
    std::optional<Value> offset = std::visit(
        overloaded{
            [](const instr::Jmp& j) -> std::optional<Value> { return j.offset; },
            [](const instr::JmpLess& j) -> std::optional<Value> { return j.offset; },
            [](const instr::JmpGe& j) -> std::optional<Value> { return j.offset; },
            [](const auto&) -> std::optional<Value> { return std::nullopt; },
        },
        program[pc]);
    if (!offset) continue;
    Value target = static_cast<Value>(pc) + 1 + *offset;
    if (target < 0 || target > size) return false;
  }
  return true;
}

}  // namespace imp
