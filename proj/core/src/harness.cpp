#include "imp/harness.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "imp/big_step.hpp"
#include "imp/compiler.hpp"
#include "imp/parser.hpp"

namespace imp {

void GenConfig::validate() const {
  if (literal_lo > literal_hi) {
    throw std::invalid_argument("GenConfig: literal_lo > literal_hi");
  }
  if (!(loop_probability >= 0.0 && loop_probability <= 1.0)) {
    throw std::invalid_argument("GenConfig: loop_probability outside [0, 1]");
  }
  if (max_vars == 0) throw std::invalid_argument("GenConfig: max_vars must be >= 1");
}

std::vector<Identifier> GenConfig::variables() const {
  static const char* kNames[] = {"x", "y", "z", "w"};
  std::vector<Identifier> out;
  for (std::size_t i = 0; i < max_vars; ++i) {
    out.push_back(i < 4 ? Identifier(kNames[i]) : "v" + std::to_string(i));
  }
  return out;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Reject the low sliver that would bias `x % n`.
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t x = next();
  while (x < threshold) x = next();
  return x % n;
}

Value Rng::between(Value lo, Value hi) {
  auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<Value>(next());  // full 64-bit range
  return static_cast<Value>(static_cast<std::uint64_t>(lo) + below(span));
}

bool Rng::chance(double p) {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

namespace {

constexpr std::size_t kExprDepth = 2;

AExp gen_leaf(const GenConfig& cfg, Rng& rng, const std::vector<Identifier>& vars) {
  if (rng.chance(0.5)) return AExp::num(rng.between(cfg.literal_lo, cfg.literal_hi));
  return AExp::var(rng.pick(vars));
}

Com gen_loop(const GenConfig& cfg, Rng& rng, std::size_t depth,
             const std::vector<Identifier>& vars) {
  if (rng.chance(0.85)) {
    // Counter loop: the body ends by moving the counter toward the exit.
    const Identifier& v = rng.pick(vars);
    Value limit = rng.between(cfg.literal_lo, cfg.literal_hi);
    Value step = rng.between(1, 2);
    bool up = rng.chance(0.5);
    BExp cond = up ? BExp::less(AExp::var(v), AExp::num(limit))
                   : BExp::less(AExp::num(limit), AExp::var(v));
    if (rng.chance(0.2)) cond = BExp::conj(cond, gen_bexp(cfg, rng, 1));
    Com advance = Com::assign(v, AExp::plus(AExp::var(v), AExp::num(up ? step : -step)));
    Com body = Com::seq(gen_com(cfg, rng, depth - 1), advance);
    return Com::while_loop(std::move(cond), std::move(body));
  }
  BExp cond = gen_bexp(cfg, rng, std::min(depth - 1, kExprDepth));
  return Com::while_loop(std::move(cond), gen_com(cfg, rng, depth - 1));
}

}  // namespace

AExp gen_aexp(const GenConfig& cfg, Rng& rng, std::size_t depth) {
  std::vector<Identifier> vars = cfg.variables();
  if (depth == 0 || rng.chance(0.5)) return gen_leaf(cfg, rng, vars);
  AExp left = gen_aexp(cfg, rng, depth - 1);
  return AExp::plus(std::move(left), gen_aexp(cfg, rng, depth - 1));
}

BExp gen_bexp(const GenConfig& cfg, Rng& rng, std::size_t depth) {
  auto less = [&](std::size_t d) {
    AExp left = gen_aexp(cfg, rng, d);
    return BExp::less(std::move(left), gen_aexp(cfg, rng, d));
  };
  if (depth == 0) {
    if (rng.chance(0.15)) return BExp::lit(rng.chance(0.5));
    return less(0);
  }
  std::uint64_t r = rng.below(100);
  if (r < 15) return BExp::negate(gen_bexp(cfg, rng, depth - 1));
  if (r < 35) {
    BExp left = gen_bexp(cfg, rng, depth - 1);
    return BExp::conj(std::move(left), gen_bexp(cfg, rng, depth - 1));
  }
  if (r < 45) return BExp::lit(rng.chance(0.5));
  return less(std::min<std::size_t>(depth - 1, 1));
}

Com gen_com(const GenConfig& cfg, Rng& rng) {
  cfg.validate();
  return gen_com(cfg, rng, cfg.max_depth);
}

Com gen_com(const GenConfig& cfg, Rng& rng, std::size_t depth) {
  std::vector<Identifier> vars = cfg.variables();
  if (depth == 0) {
    if (rng.chance(0.15)) return Com::skip();
    const Identifier& x = rng.pick(vars);
    return Com::assign(x, gen_aexp(cfg, rng, 0));
  }
  if (rng.chance(cfg.loop_probability)) return gen_loop(cfg, rng, depth, vars);
  std::uint64_t r = rng.below(100);
  if (r < 40) {
    Com first = gen_com(cfg, rng, depth - 1);
    return Com::seq(std::move(first), gen_com(cfg, rng, depth - 1));
  }
  if (r < 60) {
    BExp cond = gen_bexp(cfg, rng, std::min(depth - 1, kExprDepth));
    Com then_branch = gen_com(cfg, rng, depth - 1);
    return Com::if_then_else(std::move(cond), std::move(then_branch),
                             gen_com(cfg, rng, depth - 1));
  }
  if (r < 90) {
    const Identifier& x = rng.pick(vars);
    return Com::assign(x, gen_aexp(cfg, rng, std::min(depth, kExprDepth)));
  }
  return Com::skip();
}

Assertion gen_assertion(const GenConfig& cfg, Rng& rng, std::size_t depth) {
  auto leaf = [&]() {
    if (rng.chance(0.1)) return rng.chance(0.5) ? Assertion::truth() : Assertion::falsity();
    static constexpr CmpOp kOps[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Eq};
    CmpOp op = kOps[rng.below(3)];
    AExp left = gen_aexp(cfg, rng, 1);
    return Assertion::cmp(op, std::move(left), gen_aexp(cfg, rng, 1));
  };
  if (depth == 0) return leaf();
  std::uint64_t r = rng.below(100);
  auto binary = [&](auto make) {
    Assertion left = gen_assertion(cfg, rng, depth - 1);
    return make(std::move(left), gen_assertion(cfg, rng, depth - 1));
  };
  if (r < 15) return Assertion::negate(gen_assertion(cfg, rng, depth - 1));
  if (r < 40) return binary(Assertion::conj);
  if (r < 60) return binary(Assertion::disj);
  if (r < 75) return binary(Assertion::implies);
  return leaf();
}

State gen_state(const GenConfig& cfg, Rng& rng) {
  State s;
  for (const auto& x : cfg.variables()) {
    if (rng.chance(0.5)) s = s.update(x, rng.between(cfg.literal_lo, cfg.literal_hi));
  }
  return s;
}

Program gen_program(Rng& rng, std::size_t max_len) {
  static const std::vector<Identifier> kNames = {"x", "y", "counter", "_t", "v2", "Acc_9"};
  auto operand = [&]() -> Value {
    switch (rng.below(4)) {
      case 0:
        return std::numeric_limits<Value>::min() + static_cast<Value>(rng.below(3));
      case 1:
        return std::numeric_limits<Value>::max() - static_cast<Value>(rng.below(3));
      default:
        return rng.between(-20, 20);
    }
  };
  Program p;
  std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    switch (rng.below(7)) {
      case 0:
        p.emplace_back(instr::LoadI{operand()});
        break;
      case 1:
        p.emplace_back(instr::Load{rng.pick(kNames)});
        break;
      case 2:
        p.emplace_back(instr::Add{});
        break;
      case 3:
        p.emplace_back(instr::Store{rng.pick(kNames)});
        break;
      case 4:
        p.emplace_back(instr::Jmp{operand()});
        break;
      case 5:
        p.emplace_back(instr::JmpLess{operand()});
        break;
      default:
        p.emplace_back(instr::JmpGe{operand()});
        break;
    }
  }
  return p;
}

void SuiteResult::merge(const SuiteResult& other) {
  cases_run += other.cases_run;
  cases_passed += other.cases_passed;
  cases_skipped_divergent += other.cases_skipped_divergent;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string state_spec(const State& s) {
  std::string out;
  for (const auto& [name, value] : s.bindings()) {
    if (!out.empty()) out += ',';
    out += name + "=" + std::to_string(value);
  }
  return out;
}

namespace {

// Bookkeeping shared by every suite: one call to pass/skip/fail per case.
class Tally {
 public:
  Tally(std::string name, const GenConfig& cfg) : cfg_(cfg) { result_.name = std::move(name); }

  void begin(std::size_t index) {
    index_ = index;
    ++result_.cases_run;
  }
  void pass() { ++result_.cases_passed; }
  void skip() { ++result_.cases_skipped_divergent; }
  void fail(std::string program, const State& s, std::string expectation,
            std::string observed) {
    result_.failures.push_back(FailureRecord{index_, cfg_.seed, std::move(program),
                                             state_spec(s), std::move(expectation),
                                             std::move(observed)});
  }
  // Returns true when the check passed.
  bool expect(bool ok, const std::string& program, const State& s,
              std::string expectation, std::string observed) {
    if (ok) {
      pass();
    } else {
      fail(program, s, std::move(expectation), std::move(observed));
    }
    return ok;
  }

  SuiteResult finish() { return std::move(result_); }

 private:
  const GenConfig& cfg_;
  SuiteResult result_;
  std::size_t index_ = 0;
};

std::string describe(const BigStepOutcome& out) {
  if (!out.terminated()) return "big-step fuel exhausted";
  return "big-step terminated in " + to_string(out.final_state);
}

std::string describe(const MachineOutcome& out) {
  std::string kind = out.kind == MachineOutcome::Kind::Halted           ? "halted"
                     : out.kind == MachineOutcome::Kind::StackUnderflow ? "stack underflow"
                                                                        : "fuel exhausted";
  std::string stack;
  for (Value v : out.last.top_first()) stack += (stack.empty() ? "" : ",") + std::to_string(v);
  return kind + " at pc=" + std::to_string(out.last.pc) + " state=" +
         to_string(out.last.state) + " stack=[" + stack + "] after " +
         std::to_string(out.steps_taken) + " steps";
}

auto no_visit = [](const auto&) {};

// Stream ids for Rng; each case draws from its own stream.
constexpr std::uint64_t kAsmStream = 1ULL << 40;
constexpr std::uint64_t kHoareStream = 2ULL << 40;

GenConfig loop_free(const GenConfig& cfg, std::size_t depth) {
  GenConfig out = cfg;
  out.loop_probability = 0.0;
  out.max_depth = depth;
  return out;
}

}  // namespace

SuiteResult suite_small_big(std::size_t cases, const GenConfig& cfg, std::size_t fuel,
                            const SmallStepFn& step) {
  cfg.validate();
  Tally t("small-big", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, i);
    Com c = gen_com(cfg, rng);
    State s = gen_state(cfg, rng);
    std::string text = pretty_com(c);

    auto small = star_walk(step, ProgConfig{c, s}, fuel, no_visit);
    if (small.status == TraceStatus::Completed) {
      if (!small.last.final()) {
        t.fail(text, s, "completed trace ends in skip",
               "stuck at " + pretty_com(small.last.command));
        continue;
      }
      BigStepOutcome big = big_step(c, s, cross_fuel(fuel));
      t.expect(big.terminated() && big.final_state == small.last.state, text, s,
               "big-step terminates in " + to_string(small.last.state), describe(big));
      continue;
    }
    BigStepOutcome big = big_step(c, s, fuel);
    if (!big.terminated()) {
      t.skip();
      continue;
    }
    auto again = star_walk(step, ProgConfig{c, s}, cross_fuel(fuel), no_visit);
    bool ok = again.status == TraceStatus::Completed && again.last.final() &&
              again.last.state == big.final_state;
    t.expect(ok, text, s, "small-step completes in " + to_string(big.final_state),
             std::string("small-step ") + to_string(again.status) + " at " +
                 pretty_com(again.last.command) + " " + to_string(again.last.state));
  }
  return t.finish();
}

SuiteResult suite_one_step_continue(std::size_t cases, const GenConfig& cfg,
                                    std::size_t fuel) {
  cfg.validate();
  Tally t("one-step-continue", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, i);
    Com c = gen_com(cfg, rng);
    State s = gen_state(cfg, rng);
    // Start from a random reachable configuration, not only initial ones.
    auto prefix = star_walk(small_step, ProgConfig{c, s}, rng.below(20), no_visit);
    ProgConfig cfg0 = prefix.last;
    if (cfg0.final()) cfg0 = ProgConfig{Com::seq(Com::skip(), c), s};
    std::string text = pretty_com(cfg0.command);

    ProgConfig next = *small_step(cfg0);
    BigStepOutcome direct = big_step(cfg0.command, cfg0.state, fuel);
    BigStepOutcome after = big_step(next.command, next.state, fuel);
    if (!direct.terminated() && !after.terminated()) {
      t.skip();
      continue;
    }
    // One step changes the derivation size by at most +1 (loop unfolding)
    // and at least -2 (discarding `skip;`).
    if (!direct.terminated()) direct = big_step(cfg0.command, cfg0.state, fuel + 2);
    if (!after.terminated()) after = big_step(next.command, next.state, fuel + 1);
    bool ok = direct.terminated() && after.terminated() &&
              direct.final_state == after.final_state;
    t.expect(ok, text, cfg0.state, "step then big-step agrees with " + describe(direct),
             describe(after));
  }
  return t.finish();
}

SuiteResult suite_compiler(std::size_t terminating_cases, const GenConfig& cfg,
                           std::size_t fuel) {
  cfg.validate();
  Tally t("compiler", cfg);
  std::size_t terminating = 0;
  const std::size_t max_attempts = 20 * terminating_cases + 100;
  for (std::size_t i = 0; terminating < terminating_cases && i < max_attempts; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, i);
    Com c = gen_com(cfg, rng);
    State s = gen_state(cfg, rng);
    std::string text = pretty_com(c);
    Program code = ccomp(c);
    const auto length = static_cast<Value>(code.size());
    const MachineConfig start{0, s, {}};

    if (!jump_targets_in_range(code)) {
      t.fail(text, s, "all jump targets within [0, |P|]", pretty_asm(code));
      continue;
    }

    BigStepOutcome big = big_step(c, s, fuel);
    if (!big.terminated()) {
      // Machine-to-source direction for sources that outran the big-step
      // budget: a clean halt must still be matched by big-step.
      MachineOutcome vm = exec(code, start, fuel);
      if (!vm.is_halted()) {
        t.skip();
        continue;
      }
      BigStepOutcome again = big_step(c, s, 2 * (1 + size_of(c)) * (vm.steps_taken + 1));
      bool ok = vm.last.pc == length && vm.last.stack.empty() && again.terminated() &&
                again.final_state == vm.last.state;
      t.expect(ok, text, s, "halting machine run matched by big-step", describe(again));
      continue;
    }

    ++terminating;
    const std::size_t vm_fuel = fuel * kCompilerFuelFactor * (1 + size_of(c));
    MachineOutcome vm = exec(code, start, vm_fuel);
    bool ok = vm.is_halted() && vm.last.pc == length && vm.last.stack.empty() &&
              vm.last.state == big.final_state;
    if (!ok) {
      t.fail(text, s,
             "halt at pc=" + std::to_string(length) + " with empty stack and " +
                 to_string(big.final_state),
             describe(vm));
      continue;
    }

    // exec / exec_n correspondence on the same run.
    std::string why;
    std::optional<std::size_t> n = steps_to_halt(code, start, vm_fuel);
    if (!n || *n != vm.steps_taken) {
      why = "steps_to_halt disagrees with exec's step count";
    } else {
      ExecNResult exact = exec_n(code, start, *n);
      const auto* reached = std::get_if<MachineConfig>(&exact);
      ExecNResult beyond = exec_n(code, start, *n + 1);
      const auto* stop = std::get_if<ExecNFailure>(&beyond);
      std::size_t m = rng.below(*n + 1);
      MachineTrace prefix = exec_trace(code, start, m);
      ExecNResult mid = exec_n(code, start, m);
      const auto* mid_cfg = std::get_if<MachineConfig>(&mid);
      if (!reached || !(*reached == vm.last)) {
        why = "exec_n(P, cfg, n) differs from exec's halted configuration";
      } else if (!stop || stop->steps_completed != *n ||
                 stop->reason != StopReason::OutOfProgram) {
        why = "exec_n(P, cfg, n+1) does not stop after n steps";
      } else if (prefix.configs.size() != m + 1 || !mid_cfg ||
                 !(prefix.configs.back() == *mid_cfg)) {
        why = "exec_n(P, cfg, " + std::to_string(m) + ") is not on exec's trace";
      }
    }
    t.expect(why.empty(), text, s, "exec and exec_n agree", why);
  }
  return t.finish();
}

SuiteResult suite_big_step_determinism(std::size_t cases, const GenConfig& cfg,
                                       std::size_t fuel) {
  cfg.validate();
  Tally t("big-step-determinism", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, i);
    Com c = gen_com(cfg, rng);
    State s = gen_state(cfg, rng);
    std::string text = pretty_com(c);

    BigStepOutcome first = big_step(c, s, fuel);
    BigStepOutcome second = big_step(c, s, fuel);
    if (first.kind != second.kind ||
        (first.terminated() && (!(first.final_state == second.final_state) ||
                                first.rules_applied != second.rules_applied))) {
      t.fail(text, s, "repeatable outcome", describe(first) + " vs " + describe(second));
      continue;
    }
    if (!first.terminated()) {
      t.pass();
      continue;
    }
    const std::size_t k = first.rules_applied;
    BigStepOutcome exact = big_step(c, s, k);
    BigStepOutcome short_by_one = big_step(c, s, k - 1);
    BigStepOutcome generous = big_step(c, s, 2 * fuel + 7);
    std::set<Identifier> frame = vars_of(c);
    bool frame_ok = true;
    for (const auto& [name, value] : first.final_state.bindings()) {
      if (!frame.count(name) && value != s.read(name)) frame_ok = false;
    }
    for (const auto& [name, value] : s.bindings()) {
      if (!frame.count(name) && value != first.final_state.read(name)) frame_ok = false;
    }
    bool ok = exact.terminated() && exact.final_state == first.final_state &&
              !short_by_one.terminated() && generous.terminated() &&
              generous.final_state == first.final_state && frame_ok;
    t.expect(ok, text, s,
             "same final state under any fuel >= " + std::to_string(k) +
                 ", exhausted below, frame respected",
             describe(exact) + "; " + describe(short_by_one) + "; " + describe(generous));
  }
  return t.finish();
}

SuiteResult suite_small_step_determinism(std::size_t cases, const GenConfig& cfg,
                                         std::size_t fuel) {
  cfg.validate();
  Tally t("small-step-determinism", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, i);
    Com c = gen_com(cfg, rng);
    State s = gen_state(cfg, rng);
    std::string text = pretty_com(c);

    StepTrace a = star_run(ProgConfig{c, s}, fuel);
    StepTrace b = star_closure([](const ProgConfig& p) { return small_step(p); },
                               ProgConfig{c, s}, fuel);
    std::string why;
    if (a.status != b.status || a.configs.size() != b.configs.size()) {
      why = "traces differ in length or status";
    }
    for (std::size_t k = 0; why.empty() && k < a.configs.size(); ++k) {
      if (!(a.configs[k] == b.configs[k])) why = "traces differ at step " + std::to_string(k);
    }
    for (std::size_t k = 1; why.empty() && k < a.configs.size(); ++k) {
      const State& before = a.configs[k - 1].state;
      const State& after = a.configs[k].state;
      std::set<Identifier> names;
      for (const auto& [n, v] : before.bindings()) names.insert(n);
      for (const auto& [n, v] : after.bindings()) names.insert(n);
      std::size_t changed = 0;
      for (const auto& n : names) changed += before.read(n) != after.read(n);
      if (changed > 1) why = "step " + std::to_string(k) + " changed several variables";
    }
    if (why.empty()) {
      bool final_ok = a.status == TraceStatus::Completed ? a.last().final() : !a.last().final();
      if (!final_ok) why = "trace status inconsistent with last configuration";
    }
    t.expect(why.empty(), text, s, "deterministic trace", why);
  }
  return t.finish();
}

SuiteResult suite_parse_round_trip(std::size_t cases, const GenConfig& cfg) {
  cfg.validate();
  Tally t("parse-round-trip", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, i);
    Com c = gen_com(cfg, rng);
    std::string text = pretty_com(c);
    try {
      Com back = parse_com(text);
      t.expect(back == c, text, State{}, "parse(pretty(c)) == c",
               "reparsed as " + pretty_com(back));
    } catch (const ParseError& e) {
      t.fail(text, State{}, "pretty output parses", e.what());
    }
  }
  return t.finish();
}

SuiteResult suite_asm_round_trip(std::size_t cases, const GenConfig& cfg) {
  Tally t("asm-round-trip", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, kAsmStream + i);
    Program p = gen_program(rng, 30);
    std::string text = pretty_asm(p);
    try {
      Program back = parse_asm(text);
      t.expect(back == p, text, State{}, "parse_asm(pretty_asm(p)) == p",
               pretty_asm(back));
    } catch (const ParseError& e) {
      t.fail(text, State{}, "listing parses", e.what());
    }
  }
  return t.finish();
}

SuiteResult suite_substitution(std::size_t cases, const GenConfig& cfg) {
  cfg.validate();
  Tally t("substitution", cfg);
  std::vector<Identifier> vars = cfg.variables();
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, kHoareStream + i);
    Assertion a = gen_assertion(cfg, rng, 3);
    Identifier x = rng.pick(vars);
    AExp e = gen_aexp(cfg, rng, 2);
    State s = gen_state(cfg, rng);
    bool lhs = eval_assertion(subst_assertion(a, x, e), s);
    bool rhs = eval_assertion(a, s.update(x, aval(e, s)));
    t.expect(lhs == rhs, pretty(a) + "  [" + x + " := " + pretty(e) + "]", s,
             "eval(A[x:=a], s) == eval(A, s[x := aval(a, s)])",
             std::string(lhs ? "true" : "false") + " vs " + (rhs ? "true" : "false"));
  }
  return t.finish();
}

namespace {

std::set<Identifier> vars_union(std::initializer_list<std::set<Identifier>> sets) {
  std::set<Identifier> out;
  for (const auto& s : sets) out.insert(s.begin(), s.end());
  return out;
}

std::string triple_text(const Assertion& p, const Com& c, const Assertion& q) {
  return "{" + pretty(p) + "} " + pretty_com(c) + " {" + pretty(q) + "}";
}

std::string describe(const CheckResult& r) {
  std::string out = to_string(r.verdict);
  if (r.counterexample) out += " at " + to_string(*r.counterexample);
  return out;
}

}  // namespace

SuiteResult suite_entails_laws(std::size_t cases, const GenConfig& cfg,
                               const HoareSuiteConfig& hcfg) {
  cfg.validate();
  Tally t("entails-laws", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, kHoareStream + i);
    Assertion p = gen_assertion(cfg, rng, 2);
    Assertion r1 = gen_assertion(cfg, rng, 2);
    Assertion r2 = gen_assertion(cfg, rng, 2);
    // p |= q |= r by construction; plus one unconstrained triple.
    Assertion q = Assertion::disj(p, r1);
    Assertion r = Assertion::disj(r2, q);
    auto vars = vars_union({vars_of(p), vars_of(r1), vars_of(r2)});
    std::string text = pretty(p) + " |= " + pretty(q) + " |= " + pretty(r);

    std::string why;
    if (!entails(p, p, vars, hcfg.bound).valid()) why = "reflexivity";
    if (why.empty() && !(entails(p, q, vars, hcfg.bound).valid() &&
                         entails(q, r, vars, hcfg.bound).valid() &&
                         entails(p, r, vars, hcfg.bound).valid())) {
      why = "transitivity (constructed chain)";
    }
    if (why.empty()) {
      bool pr1 = entails(p, r1, vars, hcfg.bound).valid();
      bool r1r2 = entails(r1, r2, vars, hcfg.bound).valid();
      if (pr1 && r1r2 && !entails(p, r2, vars, hcfg.bound).valid()) {
        why = "transitivity (random)";
      }
      bool r1p = entails(r1, p, vars, hcfg.bound).valid();
      if (pr1 && r1p) {
        // Mutual entailment means equal truth values on every enumerated state.
        enumerate_states(vars, hcfg.bound, [&](const State& s) {
          if (eval_assertion(p, s) != eval_assertion(r1, s)) {
            why = "antisymmetry";
            return false;
          }
          return true;
        });
      }
    }
    t.expect(why.empty(), text, State{}, "entailment laws hold", why);
  }
  return t.finish();
}

SuiteResult suite_strengthen_pre(std::size_t cases, const GenConfig& cfg,
                                 const HoareSuiteConfig& hcfg) {
  cfg.validate();
  GenConfig pcfg = loop_free(cfg, hcfg.program_depth);
  Tally t("strengthen-pre", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, kHoareStream + i);
    Com c = gen_com(pcfg, rng);
    Assertion q = gen_assertion(cfg, rng, 2);
    Assertion p = wp_loop_free(c, q);
    Assertion extra = gen_assertion(cfg, rng, 2);
    auto vars = vars_union({vars_of(c), vars_of(q), vars_of(p), vars_of(extra)});
    Assertion stronger = rng.chance(0.5) ? extra : Assertion::conj(extra, p);
    if (!entails(stronger, p, vars, hcfg.bound).valid()) stronger = Assertion::conj(extra, p);
    std::string text = triple_text(stronger, c, q);

    CheckResult premise_entails = entails(stronger, p, vars, hcfg.bound);
    CheckResult premise_triple = check_triple(p, c, q, vars, hcfg.bound, hcfg.fuel, Mode::Total);
    if (!premise_entails.valid() || !premise_triple.valid()) {
      t.fail(text, State{}, "premises hold: P' |= P and {P} c {Q}",
             describe(premise_entails) + "; " + describe(premise_triple));
      continue;
    }
    CheckResult conclusion =
        check_triple(stronger, c, q, vars, hcfg.bound, hcfg.fuel, Mode::Total);
    t.expect(conclusion.valid(), text, State{}, "{P'} c {Q} valid", describe(conclusion));
  }
  return t.finish();
}

SuiteResult suite_conseq(std::size_t cases, const GenConfig& cfg,
                         const HoareSuiteConfig& hcfg) {
  cfg.validate();
  GenConfig pcfg = loop_free(cfg, hcfg.program_depth);
  Tally t("conseq", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    // Offset stream so these programs differ from the strengthen-pre ones.
    Rng rng(cfg.seed, kHoareStream + (1ULL << 32) + i);
    Com c = gen_com(pcfg, rng);
    Assertion q = gen_assertion(cfg, rng, 2);
    Assertion p = wp_loop_free(c, q);
    Assertion extra_pre = gen_assertion(cfg, rng, 2);
    Assertion extra_post = gen_assertion(cfg, rng, 2);
    auto vars = vars_union(
        {vars_of(c), vars_of(q), vars_of(p), vars_of(extra_pre), vars_of(extra_post)});
    Assertion stronger = Assertion::conj(extra_pre, p);
    Assertion weaker = rng.chance(0.5) ? extra_post : Assertion::disj(q, extra_post);
    if (!entails(q, weaker, vars, hcfg.bound).valid()) weaker = Assertion::disj(q, extra_post);
    std::string text = triple_text(stronger, c, weaker);

    CheckResult pre_ok = entails(stronger, p, vars, hcfg.bound);
    CheckResult triple_ok = check_triple(p, c, q, vars, hcfg.bound, hcfg.fuel, Mode::Total);
    CheckResult post_ok = entails(q, weaker, vars, hcfg.bound);
    if (!pre_ok.valid() || !triple_ok.valid() || !post_ok.valid()) {
      t.fail(text, State{}, "premises hold: P' |= P, {P} c {Q}, Q |= Q'",
             describe(pre_ok) + "; " + describe(triple_ok) + "; " + describe(post_ok));
      continue;
    }
    CheckResult conclusion =
        check_triple(stronger, c, weaker, vars, hcfg.bound, hcfg.fuel, Mode::Total);
    t.expect(conclusion.valid(), text, State{}, "{P'} c {Q'} valid", describe(conclusion));
  }
  return t.finish();
}

SuiteResult suite_wp_semantics(std::size_t cases, const GenConfig& cfg,
                               const HoareSuiteConfig& hcfg) {
  cfg.validate();
  GenConfig pcfg = loop_free(cfg, hcfg.program_depth);
  Tally t("wp-semantics", cfg);
  for (std::size_t i = 0; i < cases; ++i) {
    t.begin(i);
    Rng rng(cfg.seed, kHoareStream + (2ULL << 32) + i);
    Com c = gen_com(pcfg, rng);
    Assertion q = gen_assertion(cfg, rng, 2);
    Assertion p = wp_loop_free(c, q);
    std::string text = triple_text(p, c, q);
    std::string why;
    State witness;
    for (int k = 0; k < 20 && why.empty(); ++k) {
      State s = gen_state(cfg, rng);
      BigStepOutcome out = big_step(c, s, hcfg.fuel);
      bool semantic = out.terminated() && eval_assertion(q, out.final_state);
      if (eval_assertion(p, s) != semantic) {
        why = "wp and execution disagree";
        witness = s;
      }
    }
    t.expect(why.empty(), text, witness, "eval(wp(c, Q), s) iff c ends in Q", why);
  }
  return t.finish();
}

const std::vector<LoopFixture>& while_fun_fixtures() {
  static const std::vector<LoopFixture> kFixtures = {
      {"countdown",
       "while (0 < x) invariant (0 <= x) measure (x) { x := x + -1 }"},
      {"countdown-by-2",
       "while (1 < x) invariant (0 <= x) measure (x) { x := x + -2 }"},
      {"countdown-by-3",
       "while (2 < x) invariant (0 <= x) measure (x) { x := x + -3 }"},
      {"transfer",
       "while (0 < x) invariant (0 <= x && x + y = t) measure (x) "
       "{ x := x + -1; y := y + 1 }"},
      {"drain-pair",
       "while (0 < x + y) invariant (0 <= x && 0 <= y) measure (x + y) "
       "{ if (0 < x) { x := x + -1 } else { y := y + -1 } }"},
      {"guarded",
       "while (0 < x && y < 3) invariant (0 <= x) measure (x) "
       "{ x := x + -1; y := y + 1 }"},
      {"never-entered",
       "while (false) invariant (true) measure (0) { skip }"},
  };
  return kFixtures;
}

SuiteResult suite_while_fun(const HoareSuiteConfig& hcfg) {
  GenConfig cfg;
  Tally t("while-fun", cfg);
  std::size_t index = 0;
  for (const LoopFixture& fx : while_fun_fixtures()) {
    t.begin(index++);
    AnnotatedCom ac = parse_annotated_com(fx.source);
    const auto* loop = std::get_if<com::While>(&ac.program().node().v);
    const LoopAnnotation* ann = ac.annotation_for(ac.program());
    if (!loop || !ann || !ann->invariant || !ann->measure) {
      t.fail(fx.source, State{}, "fixture is one annotated loop", fx.name);
      continue;
    }
    const Assertion& inv = *ann->invariant;
    Assertion post = Assertion::conj(inv, Assertion::negate(bexp_to_assertion(loop->cond)));

    std::string why;
    VcgenResult gen = vcgen(ac, post, Mode::Total);
    for (const auto& vc : gen.vcs) {
      CheckResult r = entails(Assertion::truth(), vc.formula, vars_of(vc.formula),
                              hcfg.loop_bound);
      if (!r.valid()) {
        why = fx.name + ": VC '" + vc.label + "' " + describe(r);
        break;
      }
    }
    if (why.empty()) {
      auto vars = vars_union({vars_of(ac.program()), vars_of(inv)});
      CheckResult triple = check_triple(inv, ac.program(), post, vars, hcfg.loop_bound,
                                        hcfg.fuel, Mode::Total);
      if (!triple.valid()) why = fx.name + ": total triple " + describe(triple);
    }
    t.expect(why.empty(), fx.source, State{}, "VCs valid and {I} loop {I && !b} total",
             why);
  }
  return t.finish();
}

SuiteResult suite_hoare(std::size_t cases, const GenConfig& cfg,
                        const HoareSuiteConfig& hcfg) {
  SuiteResult out;
  out.name = "hoare";
  out.merge(suite_entails_laws(cases, cfg, hcfg));
  out.merge(suite_strengthen_pre(cases, cfg, hcfg));
  out.merge(suite_conseq(cases, cfg, hcfg));
  out.merge(suite_wp_semantics(cases, cfg, hcfg));
  if (cases > 0) out.merge(suite_while_fun(hcfg));
  return out;
}

}  // namespace imp
