#include <gtest/gtest.h>

#include "imp/harness.hpp"
#include "imp/parser.hpp"

namespace imp {
namespace {

AExp num(Value v) { return AExp::num(v); }
AExp var(const char* x) { return AExp::var(x); }

TEST(ParseCom, Examples) {
  EXPECT_EQ(parse_com("skip"), Com::skip());
  EXPECT_EQ(parse_com("x := x + 1"), Com::assign("x", AExp::plus(var("x"), num(1))));
  EXPECT_EQ(parse_com("while (i < 3) { i := i + 1 }"),
            Com::while_loop(BExp::less(var("i"), num(3)),
                            Com::assign("i", AExp::plus(var("i"), num(1)))));
}

TEST(ParseCom, PlusIsLeftAssociativeAndSeqRightAssociative) {
  EXPECT_EQ(parse_com("x := 1 + 2 + 3"),
            Com::assign("x", AExp::plus(AExp::plus(num(1), num(2)), num(3))));
  Com a = Com::assign("a", num(1));
  Com b = Com::assign("b", num(2));
  Com c = Com::assign("c", num(3));
  EXPECT_EQ(parse_com("a := 1; b := 2; c := 3"), Com::seq(a, Com::seq(b, c)));
  EXPECT_EQ(parse_com("{ a := 1; b := 2 }; c := 3"), Com::seq(Com::seq(a, b), c));
}

TEST(ParseCom, BooleanSyntax) {
  EXPECT_EQ(parse_com("if (!(x < 1) && true) { skip } else { x := -4 }"),
            Com::if_then_else(
                BExp::conj(BExp::negate(BExp::less(var("x"), num(1))), BExp::lit(true)),
                Com::skip(), Com::assign("x", num(-4))));
  EXPECT_EQ(parse_bexp("(1 + x) < 2"), BExp::less(AExp::plus(num(1), var("x")), num(2)));
  EXPECT_EQ(parse_bexp("(true && false) && x < 0"),
            BExp::conj(BExp::conj(BExp::lit(true), BExp::lit(false)),
                       BExp::less(var("x"), num(0))));
}

TEST(ParseCom, CommentsAndWhitespace) {
  EXPECT_EQ(parse_com("// leading comment\n  x :=\n 1 // trailing\n"),
            Com::assign("x", num(1)));
}

TEST(ParseCom, ExtremeLiterals) {
  EXPECT_EQ(parse_com("x := -9223372036854775808"),
            Com::assign("x", num(std::numeric_limits<Value>::min())));
  EXPECT_THROW(parse_com("x := 9223372036854775808"), ParseError);
}

TEST(ParseCom, ReservedWordsAreNotIdentifiers) {
  for (const char* kw :
       {"skip", "if", "else", "while", "true", "false", "invariant", "measure"}) {
    EXPECT_THROW(parse_com(std::string(kw) + " := 1"), ParseError) << kw;
  }
  EXPECT_THROW(parse_com("__z0 := 1"), ParseError);
  EXPECT_THROW(parse_aexp("__z0 + 1"), ParseError);
}

TEST(ParseCom, ErrorsCarryPositions) {
  try {
    parse_com("x := 1;\ny := ");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start_line, 2);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse_com("if (x < 1) { skip }");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start_line, 1);
    EXPECT_GE(e.span().start_col, 19);
  }
}

// Every error span must lie within the input (line/column bounds).
TEST(ParseCom, ErrorSpansStayInsideTheInput) {
  GenConfig cfg;
  int errors = 0;
  for (std::uint64_t i = 0; i < 400; ++i) {
    Rng rng(3, i);
    std::string text = pretty_com(gen_com(cfg, rng));
    // Corrupt the text: truncate and/or splice in a stray character.
    std::size_t cut = rng.below(text.size() + 1);
    std::string bad = text.substr(0, cut);
    if (rng.chance(0.5)) bad += "};:=("[rng.below(5)];
    try {
      parse_com(bad);
    } catch (const ParseError& e) {
      ++errors;
      std::vector<std::size_t> widths{0};
      for (char ch : bad) {
        if (ch == '\n') widths.push_back(0);
        else ++widths.back();
      }
      const SourceSpan& sp = e.span();
      ASSERT_GE(sp.start_line, 1);
      ASSERT_LE(static_cast<std::size_t>(sp.start_line), widths.size());
      ASSERT_GE(sp.start_col, 1);
      ASSERT_LE(static_cast<std::size_t>(sp.start_col), widths[sp.start_line - 1] + 1) << bad;
    }
  }
  EXPECT_GT(errors, 100);
}

TEST(ParseCom, NestingLimitIsAnErrorNotACrash) {
  std::string deep(5000, '(');
  EXPECT_THROW(parse_aexp(deep + "1"), ParseError);
  std::string ok = std::string(200, '(') + "1" + std::string(200, ')');
  EXPECT_EQ(parse_aexp(ok), num(1));
}

TEST(ParseCom, LongSequencesParse) {
  std::string text;
  for (int i = 0; i < 100'000; ++i) text += "x := x + 1;\n";
  text += "skip";
  Com c = parse_com(text);
  EXPECT_EQ(size_of(c), 100'000u * 5 + 1);
}

TEST(ParseAnnotated, Examples) {
  AnnotatedCom ac =
      parse_annotated_com("while (0 < x) invariant (true) measure (x) { x := x + -1 }");
  const LoopAnnotation* ann = ac.annotation_for(ac.program());
  ASSERT_NE(ann, nullptr);
  ASSERT_TRUE(ann->invariant.has_value());
  EXPECT_EQ(*ann->invariant, Assertion::truth());
  ASSERT_TRUE(ann->measure.has_value());
  EXPECT_EQ(*ann->measure, var("x"));
  EXPECT_EQ(ann->span.start_line, 1);
  EXPECT_EQ(ann->span.start_col, 1);

  AnnotatedCom skip = parse_annotated_com("skip");
  EXPECT_EQ(skip.program(), Com::skip());

  AnnotatedCom bare = parse_annotated_com("while (0 < x) { skip }");
  const LoopAnnotation* none = bare.annotation_for(bare.program());
  EXPECT_TRUE(none == nullptr || !none->invariant.has_value());
}

TEST(ParseAnnotated, PlainParserErasesAnnotations) {
  EXPECT_EQ(parse_com("while (0 < x) invariant (true) measure (x) { skip }"),
            parse_com("while (0 < x) { skip }"));
  EXPECT_THROW(parse_com("while (0 < x) measure (x) { skip }"), ParseError);
}

TEST(ParseAssertion, ConnectivePrecedence) {
  Assertion lt = Assertion::cmp(CmpOp::Lt, var("x"), num(0));
  Assertion le = Assertion::cmp(CmpOp::Le, var("y"), num(1));
  Assertion eq = Assertion::cmp(CmpOp::Eq, var("z"), num(2));
  EXPECT_EQ(parse_assertion("x < 0 || y <= 1 && z = 2"),
            Assertion::disj(lt, Assertion::conj(le, eq)));
  EXPECT_EQ(parse_assertion("x < 0 -> y <= 1 -> z = 2"),
            Assertion::implies(lt, Assertion::implies(le, eq)));
  EXPECT_EQ(parse_assertion("!(x < 0 || false)"),
            Assertion::negate(Assertion::disj(lt, Assertion::falsity())));
}

TEST(PrettyCom, Examples) {
  EXPECT_EQ(pretty_com(Com::skip()), "skip");
  EXPECT_EQ(pretty_com(Com::assign("x", num(1))), "x := 1");
}

TEST(PrettyCom, RoundTripsGeneratedPrograms) {
  GenConfig cfg;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(8, i);
    Com c = gen_com(cfg, rng);
    ASSERT_EQ(parse_com(pretty_com(c)), c) << pretty_com(c);
  }
}

TEST(PrettyAssertion, RoundTripsGeneratedAssertions) {
  GenConfig cfg;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(12, i);
    Assertion a = gen_assertion(cfg, rng, 4);
    ASSERT_EQ(parse_assertion(pretty(a)), a) << pretty(a);
  }
}

TEST(ParseAsm, Examples) {
  EXPECT_EQ(parse_asm("LOADI 5\nSTORE x"),
            (Program{instr::LoadI{5}, instr::Store{"x"}}));
  EXPECT_EQ(parse_asm("JMP -7"), (Program{instr::Jmp{-7}}));
  try {
    parse_asm("FOO 1");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start_line, 1);
  }
}

TEST(ParseAsm, CommentsBlankLinesAndErrors) {
  EXPECT_EQ(parse_asm("// header\n\nADD // sum\n  JMPGE 2\n"),
            (Program{instr::Add{}, instr::JmpGe{2}}));
  EXPECT_THROW(parse_asm("ADD 1"), ParseError);
  EXPECT_THROW(parse_asm("LOADI"), ParseError);
  EXPECT_THROW(parse_asm("LOADI x"), ParseError);
  EXPECT_THROW(parse_asm("STORE 3"), ParseError);
  try {
    parse_asm("ADD\nADD\nJMPLESS one");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start_line, 3);
  }
}

TEST(PrettyAsm, RoundTripsGeneratedPrograms) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(21, i);
    Program p = gen_program(rng, 40);
    ASSERT_EQ(parse_asm(pretty_asm(p)), p) << pretty_asm(p);
  }
}

}  // namespace
}  // namespace imp
