// imp: batch front end for the IMP interpreters, compiler, stack machine,
// verifier and property suites.
//
// Exit codes: 0 success, 1 input error (parse, annotation, state spec, I/O),
// 2 fuel exhausted, 3 stack underflow, 4 counterexample or suite failure,
// 5 unknown verdict.

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "imp/big_step.hpp"
#include "imp/compiler.hpp"
#include "imp/harness.hpp"
#include "imp/hoare.hpp"
#include "imp/machine.hpp"
#include "imp/parser.hpp"
#include "imp/small_step.hpp"
#include "report.hpp"
#include "state_spec.hpp"

namespace {

using namespace imp;

enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kFuel = 2,
  kUnderflow = 3,
  kCounterexample = 4,
  kUnknown = 5,
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Style {
 public:
  Style() {
    const char* env = std::getenv("IMP_COLOR");
    enabled_ = isatty(STDOUT_FILENO) && !(env && std::string(env) == "0");
  }
  std::string verdict(Verdict v) const {
    const char* code = v == Verdict::Valid            ? "32"
                       : v == Verdict::Counterexample ? "31"
                                                      : "33";
    return paint(code, to_string(v));
  }
  std::string bold(const std::string& s) const { return paint("1", s); }

 private:
  std::string paint(const char* code, const std::string& s) const {
    if (!enabled_) return s;
    return std::string("\x1b[") + code + "m" + s + "\x1b[0m";
  }
  bool enabled_ = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs `parse`, prefixing parse errors with `origin` so they read `file:L:C: ...`.
template <class F>
auto parse_with(const std::string& origin, F&& parse) {
  try {
    return parse();
  } catch (const ParseError& e) {
    throw InputError(origin + ":" + e.what());
  }
}

State read_state(const std::string& spec) {
  try {
    return parse_state_spec(spec);
  } catch (const StateSpecError& e) {
    throw InputError(std::string("--state: ") + e.what());
  }
}

std::string stack_text(const MachineConfig& cfg) {
  std::string out = "stack=[";
  bool first = true;
  for (Value v : cfg.top_first()) {
    out += (first ? "" : ",") + std::to_string(v);
    first = false;
  }
  return out + "]";
}

void print_bindings(const State& s) {
  for (const auto& [name, value] : s.bindings()) std::cout << name << '=' << value << '\n';
}

bool machine_readable(const std::string& format) { return format == "machine-readable"; }

const std::vector<std::string> kFormats = {"text", "machine-readable"};

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string file;
  std::string state;
  std::size_t fuel = kDefaultFuel;
};

int cmd_run(const RunArgs& a) {
  Com c = parse_with(a.file, [&] { return parse_com(read_file(a.file)); });
  State s = read_state(a.state);
  BigStepOutcome out = big_step(c, s, a.fuel);
  if (!out.terminated()) {
    std::cerr << "fuel exhausted: no result within " << a.fuel << " rule applications\n";
    return kFuel;
  }
  std::set<Identifier> shown = vars_of(c);
  for (const auto& [name, value] : s.bindings()) shown.insert(name);
  for (const auto& name : shown) std::cout << name << '=' << out.final_state.read(name) << '\n';
  return kOk;
}

struct TraceArgs {
  std::string file;
  std::string state;
  std::size_t max_steps = kDefaultFuel;
  std::string format = "text";
};

int cmd_trace(const TraceArgs& a) {
  Com c = parse_with(a.file, [&] { return parse_com(read_file(a.file)); });
  StepTrace trace = star_run(ProgConfig{c, read_state(a.state)}, a.max_steps);
  if (machine_readable(a.format)) {
    std::cout << report::trace_lines(trace);
  } else {
    for (std::size_t i = 0; i < trace.configs.size(); ++i) {
      const ProgConfig& cfg = trace.configs[i];
      std::cout << i << ": " << pretty_com(cfg.command) << "  " << to_string(cfg.state) << '\n';
    }
    std::cout << to_string(trace.status) << " after " << trace.steps() << " steps\n";
  }
  return trace.status == TraceStatus::Completed ? kOk : kFuel;
}

struct CompileArgs {
  std::string file;
  std::string output;
};

int cmd_compile(const CompileArgs& a) {
  Com c = parse_with(a.file, [&] { return parse_com(read_file(a.file)); });
  std::string text = pretty_asm(ccomp(c));
  if (a.output.empty() || a.output == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(a.output, std::ios::binary);
  if (!(out << text)) throw InputError(a.output + ": cannot write file");
  return kOk;
}

struct ExecArgs {
  std::string file;
  std::string state;
  std::size_t max_steps = 1'000'000;
  Value pc = 0;
  std::string format = "text";
};

int cmd_exec(const ExecArgs& a) {
  Program p = parse_with(a.file, [&] { return parse_asm(read_file(a.file)); });
  MachineConfig start{a.pc, read_state(a.state), {}};
  MachineOutcome out = exec(p, start, a.max_steps);
  if (machine_readable(a.format)) {
    std::cout << report::machine_trace_lines(exec_trace(p, start, a.max_steps),
                                             out.steps_taken);
  } else {
    std::cout << "pc=" << out.last.pc << '\n';
    print_bindings(out.last.state);
    std::cout << stack_text(out.last) << '\n';
  }
  switch (out.kind) {
    case MachineOutcome::Kind::Halted:
      return kOk;
    case MachineOutcome::Kind::StackUnderflow:
      std::cerr << "stack underflow at pc=" << out.last.pc << " after " << out.steps_taken
                << " steps\n";
      return kUnderflow;
    case MachineOutcome::Kind::FuelExhausted:
      std::cerr << "fuel exhausted: machine still running after " << out.steps_taken
                << " steps\n";
      return kFuel;
  }
  return kOk;
}

struct VerifyArgs {
  std::string file;
  std::string pre = "true";
  std::string post = "true";
  Value bound = 5;
  std::size_t fuel = kDefaultFuel;
  bool total = false;
  std::string format = "text";
};

int cmd_verify(const VerifyArgs& a, const Style& style) {
  AnnotatedCom c = parse_with(a.file, [&] { return parse_annotated_com(read_file(a.file)); });
  Assertion pre = parse_with("--pre", [&] { return parse_assertion(a.pre); });
  Assertion post = parse_with("--post", [&] { return parse_assertion(a.post); });
  if (a.bound < 0) throw InputError("--bound must be non-negative");
  VerificationReport r;
  try {
    r = verify(pre, c, post, a.bound, a.fuel, a.total ? Mode::Total : Mode::Partial);
  } catch (const AnnotationError& e) {
    throw InputError(a.file + ":" + e.what());
  }

  if (machine_readable(a.format)) {
    std::cout << report::verification(r).dump() << '\n';
  } else {
    std::cout << "mode: " << to_string(r.mode) << ", bound: " << r.bound << '\n';
    std::cout << "computed precondition: " << pretty(r.precondition) << '\n';
    for (const auto& checked : r.vcs) {
      std::cout << '[' << style.verdict(checked.result.verdict) << "] " << checked.vc.label
                << ": " << pretty(checked.vc.formula) << '\n';
      if (checked.result.counterexample) {
        std::cout << "    counterexample: " << to_string(*checked.result.counterexample) << '\n';
      }
    }
    std::cout << "triple: " << style.verdict(r.triple.verdict);
    if (r.triple.counterexample) {
      std::cout << " from initial state " << to_string(*r.triple.counterexample);
    }
    std::cout << '\n' << style.bold("overall: ") << style.verdict(r.overall()) << '\n';
  }
  switch (r.overall()) {
    case Verdict::Valid:
      return kOk;
    case Verdict::Counterexample:
      return kCounterexample;
    case Verdict::Unknown:
      return kUnknown;
  }
  return kOk;
}

struct QuickcheckArgs {
  std::string suite = "all";
  std::size_t cases = 100;
  std::uint64_t seed = GenConfig{}.seed;
  std::size_t fuel = kDefaultFuel;
  std::string format = "text";
};

const std::vector<std::string> kSuites = {"small-big", "one-step", "compiler", "determinism",
                                          "round-trip", "substitution", "hoare", "all"};

int cmd_quickcheck(const QuickcheckArgs& a) {
  GenConfig cfg;
  cfg.seed = a.seed;
  HoareSuiteConfig hcfg;
  hcfg.fuel = a.fuel;
  bool all = a.suite == "all";
  std::vector<SuiteResult> results;
  auto want = [&](const char* name) { return all || a.suite == name; };
  if (want("small-big")) results.push_back(suite_small_big(a.cases, cfg, a.fuel));
  if (want("one-step")) results.push_back(suite_one_step_continue(a.cases, cfg, a.fuel));
  if (want("compiler")) results.push_back(suite_compiler(a.cases, cfg, a.fuel));
  if (want("determinism")) {
    results.push_back(suite_big_step_determinism(a.cases, cfg, a.fuel));
    results.push_back(suite_small_step_determinism(a.cases, cfg, a.fuel));
  }
  if (want("round-trip")) {
    results.push_back(suite_parse_round_trip(a.cases, cfg));
    results.push_back(suite_asm_round_trip(a.cases, cfg));
  }
  if (want("substitution")) results.push_back(suite_substitution(a.cases, cfg));
  if (want("hoare")) results.push_back(suite_hoare(a.cases, cfg, hcfg));

  std::size_t failures = 0;
  for (const auto& r : results) {
    failures += r.failures.size();
    if (machine_readable(a.format)) {
      std::cout << report::suite(r).dump() << '\n';
      continue;
    }
    std::cout << "suite " << r.name << ": run=" << r.cases_run << " passed=" << r.cases_passed
              << " skipped_divergent=" << r.cases_skipped_divergent
              << " failures=" << r.failures.size() << '\n';
    for (const auto& f : r.failures) {
      std::cout << "  case " << f.case_index << " (seed " << f.seed << ")\n"
                << "    program:  " << f.program_text << '\n'
                << "    state:    " << f.initial_state << '\n'
                << "    expected: " << f.expectation << '\n'
                << "    observed: " << f.observed << '\n';
    }
  }
  return failures == 0 ? kOk : kCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IMP interpreters, compiler, stack machine and bounded Hoare verifier"};
  app.require_subcommand(1);
  Style style;

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a program with the big-step interpreter");
  run_cmd->add_option("file", run.file, "Program (.imp)")->required();
  run_cmd->add_option("--state", run.state, "Initial state, e.g. x=1,y=-2");
  run_cmd->add_option("--fuel", run.fuel, "Rule-application budget")->capture_default_str();

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "Print the small-step trace of a program");
  trace_cmd->add_option("file", trace.file, "Program (.imp)")->required();
  trace_cmd->add_option("--state", trace.state, "Initial state, e.g. x=1,y=-2");
  trace_cmd->add_option("--max-steps", trace.max_steps, "Step budget")->capture_default_str();
  trace_cmd->add_option("--format", trace.format)->check(CLI::IsMember(kFormats))
      ->capture_default_str();

  CompileArgs compile;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a program to stack-machine assembly");
  compile_cmd->add_option("file", compile.file, "Program (.imp)")->required();
  compile_cmd->add_option("-o,--output", compile.output, "Output .asm file (default stdout)");

  ExecArgs ex;
  auto* exec_cmd = app.add_subcommand("exec", "Execute stack-machine assembly");
  exec_cmd->add_option("file", ex.file, "Assembly (.asm)")->required();
  exec_cmd->add_option("--state", ex.state, "Initial state, e.g. x=1,y=-2");
  exec_cmd->add_option("--max-steps", ex.max_steps, "Instruction budget")->capture_default_str();
  exec_cmd->add_option("--pc", ex.pc, "Initial program counter")->capture_default_str();
  exec_cmd->add_option("--format", ex.format)->check(CLI::IsMember(kFormats))
      ->capture_default_str();

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Check an annotated program against pre/post");
  verify_cmd->add_option("file", ver.file, "Annotated program (.imp)")->required();
  verify_cmd->add_option("--pre", ver.pre, "Precondition")->capture_default_str();
  verify_cmd->add_option("--post", ver.post, "Postcondition")->capture_default_str();
  verify_cmd->add_option("--bound", ver.bound, "Enumerate values in [-B, B]")
      ->capture_default_str();
  verify_cmd->add_option("--fuel", ver.fuel, "Rule budget per triple run")->capture_default_str();
  verify_cmd->add_flag("--total", ver.total, "Total correctness (loops need a measure)");
  verify_cmd->add_option("--format", ver.format)->check(CLI::IsMember(kFormats))
      ->capture_default_str();

  QuickcheckArgs qc;
  auto* qc_cmd = app.add_subcommand("quickcheck", "Run the randomized property suites");
  qc_cmd->add_option("--suite", qc.suite)->check(CLI::IsMember(kSuites))->capture_default_str();
  qc_cmd->add_option("--cases", qc.cases, "Cases per suite")->capture_default_str();
  qc_cmd->add_option("--seed", qc.seed, "Generator seed")->capture_default_str();
  qc_cmd->add_option("--fuel", qc.fuel, "Fuel per case")->capture_default_str();
  qc_cmd->add_option("--format", qc.format)->check(CLI::IsMember(kFormats))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*trace_cmd) return cmd_trace(trace);
    if (*compile_cmd) return cmd_compile(compile);
    if (*exec_cmd) return cmd_exec(ex);
    if (*verify_cmd) return cmd_verify(ver, style);
    if (*qc_cmd) return cmd_quickcheck(qc);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
