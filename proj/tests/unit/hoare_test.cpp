#include <gtest/gtest.h>

#include "imp/big_step.hpp"
#include "imp/harness.hpp"
#include "imp/hoare.hpp"
#include "imp/parser.hpp"

namespace imp {
namespace {

Assertion A(const char* text) { return parse_assertion(text); }

TEST(EvalAssertion, Examples) {
  EXPECT_TRUE(eval_assertion(Assertion::truth(), State{{"x", 9}}));
  EXPECT_TRUE(eval_assertion(Assertion::implies(Assertion::falsity(), A("x = 1")), State{}));
  EXPECT_TRUE(eval_assertion(
      Assertion::cmp(CmpOp::Lt, AExp::var("x"), AExp::num(0)), State{{"x", -1}}));
  EXPECT_TRUE(eval_assertion(A("x <= 1 && !(x < 1) && x = 1"), State{{"x", 1}}));
}

TEST(EnumerateStates, OrderAndCount) {
  std::vector<std::pair<Value, Value>> seen;
  enumerate_states({"b", "a"}, 1, [&](const State& s) {
    seen.emplace_back(s.read("a"), s.read("b"));
    return true;
  });
  ASSERT_EQ(seen.size(), 9u);
  EXPECT_EQ(seen.front(), (std::pair<Value, Value>{-1, -1}));
  EXPECT_EQ(seen[1], (std::pair<Value, Value>{-1, 0}));  // last name varies fastest
  EXPECT_EQ(seen.back(), (std::pair<Value, Value>{1, 1}));
  EXPECT_EQ(enumeration_size(3, 5), 1331u);

  int visits = 0;
  enumerate_states({}, 4, [&](const State& s) {
    EXPECT_TRUE(s.empty());
    ++visits;
    return true;
  });
  EXPECT_EQ(visits, 1);
}

TEST(Entails, Examples) {
  Assertion p = A("x < 0 && y <= x");
  EXPECT_TRUE(entails(p, p, {"x", "y"}, 3).valid());
  EXPECT_TRUE(entails(A("x < 0"), A("x <= 0"), {"x"}, 5).valid());

  // Oracle: first x in ascending order over [-5, 5] where x < 0 fails.
  Value first = 0;
  for (Value x = -5; x <= 5; ++x) {
    if (!(x < 0)) {
      first = x;
      break;
    }
  }
  CheckResult r = entails(Assertion::truth(), A("x < 0"), {"x"}, 5);
  ASSERT_EQ(r.verdict, Verdict::Counterexample);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(*r.counterexample, (State{{"x", first}}));
}

TEST(Entails, UnknownWhenTheDomainIsTooLarge) {
  CheckResult r = entails(Assertion::truth(), Assertion::truth(),
                          {"a", "b", "c", "d", "e", "f", "g", "h"}, 100);
  EXPECT_EQ(r.verdict, Verdict::Unknown);
  EXPECT_EQ(r.states_checked, 0u);
  EXPECT_THROW(entails(Assertion::truth(), Assertion::truth(), {"x"}, -1),
               std::invalid_argument);
}

TEST(Subst, Examples) {
  EXPECT_EQ(subst_assertion(A("x = 1"), "x", AExp::num(1)),
            Assertion::cmp(CmpOp::Eq, AExp::num(1), AExp::num(1)));
  Assertion other = A("y < 3 || !(z = 0)");
  EXPECT_EQ(subst_assertion(other, "x", AExp::num(7)), other);
}

TEST(Subst, SubstitutionLemmaOnRandomInputs) {
  GenConfig cfg;
  SuiteResult r = suite_substitution(500, cfg);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.cases_passed, 500u);
}

TEST(WpLoopFree, Examples) {
  Assertion q = A("x < y");
  EXPECT_EQ(wp_loop_free(Com::skip(), q), q);
  EXPECT_EQ(wp_loop_free(Com::assign("x", AExp::num(1)), A("x = 1")),
            Assertion::cmp(CmpOp::Eq, AExp::num(1), AExp::num(1)));
  EXPECT_THROW(wp_loop_free(parse_com("while (false) { skip }"), q), std::invalid_argument);
}

TEST(WpLoopFree, SemanticCharacterisation) {
  SuiteResult r = suite_wp_semantics(300, GenConfig{});
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures[0].program_text);
}

AnnotatedCom countdown() {
  return parse_annotated_com("while (0 < x) invariant (0 <= x) measure (x) { x := x + -1 }");
}

TEST(Vcgen, SkipHasNoVcs) {
  Assertion q = A("x = 3");
  VcgenResult r = vcgen(parse_annotated_com("skip"), q, Mode::Partial);
  EXPECT_TRUE(r.vcs.empty());
  EXPECT_EQ(r.precondition, q);
}

TEST(Vcgen, CountdownTotalVcsAreValid) {
  AnnotatedCom c = countdown();
  VcgenResult r = vcgen(c, A("x = 0"), Mode::Total);
  ASSERT_EQ(r.vcs.size(), 4u);
  for (const auto& vc : r.vcs) {
    CheckResult check = entails(Assertion::truth(), vc.formula, vars_of(vc.formula), 8);
    EXPECT_TRUE(check.valid()) << vc.label << ": " << pretty(vc.formula);
  }
  EXPECT_EQ(r.precondition, A("0 <= x"));
  CheckResult triple =
      check_triple(A("0 <= x"), c.program(), A("x = 0"), {"x"}, 8, 10'000, Mode::Total);
  EXPECT_TRUE(triple.valid());
}

TEST(Vcgen, LabelsCarryTheLoopPosition) {
  VcgenResult r = vcgen(parse_annotated_com("skip;\n  while (0 < x) invariant (true) "
                                            "measure (x) { x := x + -1 }"),
                        Assertion::truth(), Mode::Total);
  ASSERT_FALSE(r.vcs.empty());
  for (const auto& vc : r.vcs) EXPECT_EQ(vc.label.rfind("loop@2:3 ", 0), 0u) << vc.label;
}

TEST(Vcgen, MissingAnnotationsAreErrors) {
  AnnotatedCom bare = parse_annotated_com("while (0 < x) { skip }");
  EXPECT_THROW(vcgen(bare, Assertion::truth(), Mode::Partial), AnnotationError);
  AnnotatedCom no_measure = parse_annotated_com("while (0 < x) invariant (true) { skip }");
  EXPECT_NO_THROW(vcgen(no_measure, Assertion::truth(), Mode::Partial));
  EXPECT_THROW(vcgen(no_measure, Assertion::truth(), Mode::Total), AnnotationError);
}

TEST(Vcgen, WrongMeasureIsCaught) {
  EXPECT_THROW(parse_annotated_com("while (0 < x) invariant (true) measure (-x) { skip }"),
               ParseError);
  // The measure grows every iteration, so the decrease VC must fail.
  AnnotatedCom up = parse_annotated_com(
      "while (0 < x) invariant (0 <= x) measure (y) { x := x + -1; y := y + 1 }");
  VcgenResult r = vcgen(up, Assertion::truth(), Mode::Total);
  bool decrease_failed = false;
  for (const auto& vc : r.vcs) {
    if (vc.label.find("decreases") == std::string::npos) continue;
    decrease_failed = !entails(Assertion::truth(), vc.formula, vars_of(vc.formula), 4).valid();
  }
  EXPECT_TRUE(decrease_failed);
}

TEST(Vcgen, SnapshotsAreFreshPerLoop) {
  AnnotatedCom c = parse_annotated_com(
      "while (0 < x) invariant (0 <= x) measure (x) { x := x + -1 };"
      "while (0 < y) invariant (0 <= y) measure (y) { y := y + -1 }");
  VcgenResult r = vcgen(c, Assertion::truth(), Mode::Total);
  std::set<Identifier> snapshots;
  for (const auto& vc : r.vcs) {
    for (const auto& v : vars_of(vc.formula)) {
      if (v.rfind("__z", 0) == 0) snapshots.insert(v);
    }
  }
  EXPECT_EQ(snapshots, (std::set<Identifier>{"__z0", "__z1"}));
}

TEST(CheckTriple, Examples) {
  Com spin = parse_com("while (true) { skip }");
  EXPECT_TRUE(check_triple(Assertion::falsity(), spin, Assertion::falsity(), {}, 3, 100,
                           Mode::Total)
                  .valid());
  CheckResult r = check_triple(Assertion::truth(), spin, Assertion::truth(), {}, 1, 100,
                               Mode::Total);
  EXPECT_EQ(r.verdict, Verdict::Counterexample);
  CheckResult partial = check_triple(Assertion::truth(), spin, Assertion::truth(), {}, 1, 100,
                                     Mode::Partial);
  EXPECT_EQ(partial.verdict, Verdict::Unknown);
  EXPECT_EQ(partial.fuel_exhausted, 1u);
}

TEST(CheckTriple, CountdownFromEveryStartingValue) {
  // Direct execution of every x in [-8, 8], independently of check_triple.
  Com c = countdown().program();
  for (Value x = -8; x <= 8; ++x) {
    BigStepOutcome out = big_step(c, State{{"x", x}}, 10'000);
    ASSERT_TRUE(out.terminated());
    EXPECT_EQ(out.final_state.read("x") == 0, x >= 0);
  }
  EXPECT_TRUE(
      check_triple(A("0 <= x"), c, A("x = 0"), {"x"}, 8, 10'000, Mode::Total).valid());
  CheckResult bad =
      check_triple(A("true"), c, A("x = 0"), {"x"}, 8, 10'000, Mode::Total);
  ASSERT_EQ(bad.verdict, Verdict::Counterexample);
  EXPECT_EQ(*bad.counterexample, (State{{"x", -8}}));
}

// Partial VC soundness on every annotated fixture: all-Valid VCs imply the
// semantic triple.
TEST(Verify, PartialVcSoundnessOnFixtures) {
  for (const auto& fx : while_fun_fixtures()) {
    AnnotatedCom ac = parse_annotated_com(fx.source);
    const LoopAnnotation* ann = ac.annotation_for(ac.program());
    ASSERT_NE(ann, nullptr);
    Assertion inv = *ann->invariant;
    VerificationReport r = verify(inv, ac, inv, 6, 10'000, Mode::Partial);
    if (r.all_vcs_valid()) {
      EXPECT_NE(r.triple.verdict, Verdict::Counterexample) << fx.name;
    }
  }
}

TEST(Verify, ReportsCounterexamplesAndPreconditionVc) {
  AnnotatedCom ac = parse_annotated_com("x := x + 1");
  VerificationReport r = verify(A("x < 3"), ac, A("x < 3"), 5, 100, Mode::Partial);
  EXPECT_EQ(r.overall(), Verdict::Counterexample);
  ASSERT_FALSE(r.vcs.empty());
  EXPECT_EQ(r.vcs[0].vc.label, "precondition");
  EXPECT_EQ(r.vcs[0].result.verdict, Verdict::Counterexample);
  EXPECT_EQ(*r.triple.counterexample, (State{{"x", 2}}));

  VerificationReport ok = verify(A("x < 2"), ac, A("x < 3"), 5, 100, Mode::Partial);
  EXPECT_EQ(ok.overall(), Verdict::Valid);
}

TEST(HoareRules, StrengthenPreAndConseqFamilies) {
  GenConfig cfg;
  SuiteResult pre = suite_strengthen_pre(100, cfg);
  SuiteResult conseq = suite_conseq(100, cfg);
  EXPECT_TRUE(pre.ok());
  EXPECT_TRUE(conseq.ok());
  EXPECT_EQ(pre.cases_passed, 100u);
  EXPECT_EQ(conseq.cases_passed, 100u);
}

TEST(HoareRules, EntailmentLaws) {
  SuiteResult r = suite_entails_laws(200, GenConfig{});
  EXPECT_TRUE(r.ok());
}

TEST(HoareRules, WhileFunFixtures) {
  EXPECT_GE(while_fun_fixtures().size(), 5u);
  SuiteResult r = suite_while_fun();
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures[0].observed);
  EXPECT_EQ(r.cases_passed, while_fun_fixtures().size());
}

}  // namespace
}  // namespace imp
