#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "imp/assertion.hpp"
#include "imp/machine.hpp"
#include "imp/syntax.hpp"

namespace imp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span,
             std::vector<std::string> expected = {});

  const std::string& message() const { return message_; }
  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::string message_;
  SourceSpan span_;
  std::vector<std::string> expected_;
};

// Concrete syntax:
//
//   com    ::= item (";" item)*                      -- `;` is right-associative
//   item   ::= "skip" | ident ":=" aexp
//            | "if" "(" bexp ")" "{" com "}" "else" "{" com "}"
//            | "while" "(" bexp ")" annot? "{" com "}"
//            | "{" com "}"
//   annot  ::= "invariant" "(" assn ")" ("measure" "(" aexp ")")?
//   aexp   ::= aatom ("+" aatom)*                    -- left-associative
//   aatom  ::= int | ident | "(" aexp ")"
//   bexp   ::= batom ("&&" batom)*
//   batom  ::= "true" | "false" | "!" batom | aexp "<" aexp | "(" bexp ")"
//   assn   ::= disj ("->" assn)?
//   disj   ::= conj ("||" conj)*
//   conj   ::= unary ("&&" unary)*
//   unary  ::= "!" unary | "true" | "false" | aexp ("<"|"<="|"=") aexp
//            | "(" assn ")"
//
// Integer literals may carry a leading `-` (there is no subtraction).
// Comments run from `//` to end of line. Identifiers starting with `__` are
// reserved.
//
// All parse functions throw ParseError.
Com parse_com(std::string_view text);
AnnotatedCom parse_annotated_com(std::string_view text);
Assertion parse_assertion(std::string_view text);
AExp parse_aexp(std::string_view text);
BExp parse_bexp(std::string_view text);

std::string pretty(const AExp& a);
std::string pretty(const BExp& b);
std::string pretty(const Assertion& a);
std::string pretty_com(const Com& c);

// One instruction per line: `MNEMONIC [operand]`; `//` comments.
Program parse_asm(std::string_view text);
std::string pretty(const Instr& ins);
std::string pretty_asm(std::span<const Instr> program);

}  // namespace imp
