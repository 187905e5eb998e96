#include "imp/hoare.hpp"

#include <limits>

#include "imp/big_step.hpp"

namespace imp {

const char* to_string(Mode mode) { return mode == Mode::Partial ? "Partial" : "Total"; }

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Valid:
      return "Valid";
    case Verdict::Counterexample:
      return "CounterexampleFound";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

std::uint64_t enumeration_size(std::size_t num_vars, Value bound) {
  const auto width = static_cast<std::uint64_t>(2 * bound + 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < num_vars; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / width) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= width;
  }
  return total;
}

namespace {

void require_bound(Value bound) {
  if (bound < 0 || bound > (std::numeric_limits<Value>::max() - 1) / 2) {
    throw std::invalid_argument("enumeration bound out of range");
  }
}

}  // namespace

CheckResult entails(const Assertion& p, const Assertion& q,
                    const std::set<Identifier>& vars, Value bound) {
  require_bound(bound);
  CheckResult result;
  if (enumeration_size(vars.size(), bound) > kMaxEnumeratedStates) {
    result.verdict = Verdict::Unknown;
    return result;
  }
  enumerate_states(vars, bound, [&](const State& s) {
    ++result.states_checked;
    if (eval_assertion(p, s) && !eval_assertion(q, s)) {
      result.verdict = Verdict::Counterexample;
      result.counterexample = s;
      return false;
    }
    return true;
  });
  return result;
}

AExp subst(const AExp& a, std::string_view x, const AExp& replacement) {
  return std::visit(overloaded{
                        [&](const aexp::Num&) { return a; },
                        [&](const aexp::Var& v) { return v.name == x ? replacement : a; },
                        [&](const aexp::Plus& p) {
                          return AExp::plus(subst(p.left, x, replacement),
                                            subst(p.right, x, replacement));
                        },
                    },
                    a.node().v);
}

Assertion subst_assertion(const Assertion& a, std::string_view x,
                          const AExp& replacement) {
  auto go = [&](const Assertion& inner) { return subst_assertion(inner, x, replacement); };
  return std::visit(
      overloaded{
          [&](const assn::True&) { return a; },
          [&](const assn::False&) { return a; },
          [&](const assn::Cmp& c) {
            return Assertion::cmp(c.op, subst(c.left, x, replacement),
                                  subst(c.right, x, replacement));
          },
          [&](const assn::Not& n) { return Assertion::negate(go(n.inner)); },
          [&](const assn::And& y) { return Assertion::conj(go(y.left), go(y.right)); },
          [&](const assn::Or& y) { return Assertion::disj(go(y.left), go(y.right)); },
          [&](const assn::Imp& y) {
            return Assertion::implies(go(y.premise), go(y.conclusion));
          },
      },
      a.node().v);
}

Assertion bexp_to_assertion(const BExp& b) {
  return std::visit(
      overloaded{
          [](const bexp::Lit& l) {
            return l.value ? Assertion::truth() : Assertion::falsity();
          },
          [](const bexp::Not& n) { return Assertion::negate(bexp_to_assertion(n.inner)); },
          [](const bexp::And& x) {
            return Assertion::conj(bexp_to_assertion(x.left), bexp_to_assertion(x.right));
          },
          [](const bexp::Less& x) { return Assertion::cmp(CmpOp::Lt, x.left, x.right); },
      },
      b.node().v);
}

AnnotationError::AnnotationError(const std::string& message, SourceSpan span)
    : std::runtime_error(to_string(span) + ": " + message), span_(span) {}

namespace {

class VcGenerator {
 public:
  VcGenerator(const AnnotatedCom& program, Mode mode)
      : program_(program), mode_(mode) {}

  // Computes pre(c, q), appending loop VCs to `vcs` when `record` is set.
  Assertion pre(const Com& c, const Assertion& q, bool record) {
    // Walk `;` chains right to left without recursing on the chain.
    std::vector<const Com*> chain;
    const Com* cur = &c;
    while (const auto* s = std::get_if<com::Seq>(&cur->node().v)) {
      chain.push_back(&s->first);
      cur = &s->second;
    }
    Assertion post = pre_single(*cur, q, record);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      post = pre_single(**it, post, record);
    }
    return post;
  }

  std::vector<VerificationCondition> vcs;

 private:
  Assertion pre_single(const Com& c, const Assertion& q, bool record) {
    return std::visit(
        overloaded{
            [&](const com::Skip&) { return q; },
            [&](const com::Seq&) { return pre(c, q, record); },
            [&](const com::Assign& a) { return subst_assertion(q, a.target, a.rhs); },
            [&](const com::If& i) {
              Assertion b = bexp_to_assertion(i.cond);
              Assertion then_pre = pre(i.then_branch, q, record);
              Assertion else_pre = pre(i.else_branch, q, record);
              return Assertion::conj(Assertion::implies(b, then_pre),
                                     Assertion::implies(Assertion::negate(b), else_pre));
            },
            [&](const com::While& w) { return pre_loop(c, w, q, record); },
        },
        c.node().v);
  }

  Assertion pre_loop(const Com& loop, const com::While& w, const Assertion& q,
                     bool record) {
    const LoopAnnotation* ann = program_.annotation_for(loop);
    SourceSpan span = ann ? ann->span : SourceSpan{};
    if (!ann || !ann->invariant) {
      throw AnnotationError("loop has no invariant", span);
    }
    if (mode_ == Mode::Total && !ann->measure) {
      throw AnnotationError("loop has no measure (required for total correctness)",
                            span);
    }
    const Assertion& inv = *ann->invariant;
    Assertion b = bexp_to_assertion(w.cond);
    Assertion inv_and_b = Assertion::conj(inv, b);
    std::string label = "loop@" + std::to_string(span.start_line) + ":" +
                        std::to_string(span.start_col);

    if (mode_ == Mode::Partial) {
      Assertion body_pre = pre(w.body, inv, record);
      emit(record, label + " invariant preserved", Assertion::implies(inv_and_b, body_pre));
    } else {
      const AExp& measure = *ann->measure;
      // The partial-style preservation VC is reported but its inner loop VCs
      // are not: the decrease pass below generates the ones that matter.
      int saved_snapshot = next_snapshot_;
      Assertion preserved_pre = pre(w.body, inv, false);
      next_snapshot_ = saved_snapshot;
      emit(record, label + " invariant preserved",
           Assertion::implies(inv_and_b, preserved_pre));
      AExp snapshot = AExp::var("__z" + std::to_string(next_snapshot_++));
      Assertion decreased =
          Assertion::conj(inv, Assertion::cmp(CmpOp::Lt, measure, snapshot));
      Assertion body_pre = pre(w.body, decreased, record);
      emit(record, label + " measure decreases",
           Assertion::implies(
               Assertion::conj(inv_and_b, Assertion::cmp(CmpOp::Eq, measure, snapshot)),
               body_pre));
      emit(record, label + " measure non-negative",
           Assertion::implies(inv_and_b, Assertion::cmp(CmpOp::Le, AExp::num(0), measure)));
    }
    emit(record, label + " exit",
         Assertion::implies(Assertion::conj(inv, Assertion::negate(b)), q));
    return inv;
  }

  void emit(bool record, std::string label, Assertion formula) {
    if (record) vcs.push_back({std::move(label), std::move(formula)});
  }

  const AnnotatedCom& program_;
  Mode mode_;
  int next_snapshot_ = 0;
};

}  // namespace

Assertion wp_loop_free(const Com& c, const Assertion& q) {
  if (contains_loop(c)) {
    throw std::invalid_argument("wp_loop_free: command contains a while loop");
  }
  AnnotatedCom plain(c);
  return VcGenerator(plain, Mode::Partial).pre(c, q, false);
}

VcgenResult vcgen(const AnnotatedCom& c, const Assertion& q, Mode mode) {
  VcGenerator gen(c, mode);
  Assertion precondition = gen.pre(c.program(), q, true);
  return VcgenResult{std::move(gen.vcs), std::move(precondition)};
}

CheckResult check_triple(const Assertion& p, const Com& c, const Assertion& q,
                         const std::set<Identifier>& vars, Value bound,
                         std::size_t fuel, Mode mode) {
  require_bound(bound);
  CheckResult result;
  if (enumeration_size(vars.size(), bound) > kMaxEnumeratedStates) {
    result.verdict = Verdict::Unknown;
    return result;
  }
  enumerate_states(vars, bound, [&](const State& s) {
    ++result.states_checked;
    if (!eval_assertion(p, s)) return true;
    BigStepOutcome out = big_step(c, s, fuel);
    bool refuted = false;
    if (out.terminated()) {
      refuted = !eval_assertion(q, out.final_state);
    } else {
      ++result.fuel_exhausted;
      refuted = mode == Mode::Total;
    }
    if (refuted) {
      result.verdict = Verdict::Counterexample;
      result.counterexample = s;
      return false;
    }
    return true;
  });
  if (result.verdict == Verdict::Valid && result.fuel_exhausted > 0) {
    result.verdict = Verdict::Unknown;
  }
  return result;
}

bool VerificationReport::all_vcs_valid() const {
  for (const auto& v : vcs) {
    if (!v.result.valid()) return false;
  }
  return true;
}

Verdict VerificationReport::overall() const {
  bool unknown = triple.verdict == Verdict::Unknown;
  if (triple.verdict == Verdict::Counterexample) return Verdict::Counterexample;
  for (const auto& v : vcs) {
    if (v.result.verdict == Verdict::Counterexample) return Verdict::Counterexample;
    unknown = unknown || v.result.verdict == Verdict::Unknown;
  }
  return unknown ? Verdict::Unknown : Verdict::Valid;
}

VerificationReport verify(const Assertion& pre, const AnnotatedCom& c,
                          const Assertion& post, Value bound, std::size_t fuel,
                          Mode mode) {
  VcgenResult gen = vcgen(c, post, mode);
  VerificationReport report;
  report.mode = mode;
  report.bound = bound;
  report.precondition = gen.precondition;

  std::vector<VerificationCondition> all;
  all.push_back({"precondition", Assertion::implies(pre, gen.precondition)});
  for (auto& vc : gen.vcs) all.push_back(std::move(vc));
  for (auto& vc : all) {
    // Entailment form: true |= formula.
    CheckResult r = entails(Assertion::truth(), vc.formula, vars_of(vc.formula), bound);
    report.vcs.push_back({std::move(vc), std::move(r)});
  }

  std::set<Identifier> vars = vars_of(c.program());
  collect_vars(pre, vars);
  collect_vars(post, vars);
  report.triple = check_triple(pre, c.program(), post, vars, bound, fuel, mode);
  return report;
}

}  // namespace imp
