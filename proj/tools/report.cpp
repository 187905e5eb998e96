#include "report.hpp"

#include "imp/parser.hpp"

namespace imp::report {

json bindings(const State& s) {
  json out = json::object();
  for (const auto& [name, value] : s.bindings()) out[name] = value;
  return out;
}

json stack_top_first(const MachineConfig& cfg) { return json(cfg.top_first()); }

const char* outcome_name(MachineOutcome::Kind kind) {
  switch (kind) {
    case MachineOutcome::Kind::Halted:
      return "Halted";
    case MachineOutcome::Kind::StackUnderflow:
      return "StackUnderflow";
    case MachineOutcome::Kind::FuelExhausted:
      return "FuelExhausted";
  }
  return "?";
}

std::string trace_lines(const StepTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.configs.size(); ++i) {
    const ProgConfig& cfg = trace.configs[i];
    json rec = {{"step_index", i},
                {"command_text", pretty_com(cfg.command)},
                {"state_bindings", bindings(cfg.state)}};
    out += rec.dump() + "\n";
  }
  json tail = {{"status", to_string(trace.status)}, {"steps", trace.steps()}};
  return out + tail.dump() + "\n";
}

std::string machine_trace_lines(const MachineTrace& trace, std::size_t steps) {
  std::string out;
  for (std::size_t i = 0; i < trace.configs.size(); ++i) {
    const MachineConfig& cfg = trace.configs[i];
    json rec = {{"step", i}, {"pc", cfg.pc}, {"stack", stack_top_first(cfg)}};
    if (i > 0) {
      const State& before = trace.configs[i - 1].state;
      for (const auto& [name, value] : cfg.state.bindings()) {
        if (!before.is_bound(name) || before.read(name) != value) {
          rec["changed_binding"] = {{name, value}};
        }
      }
    }
    out += rec.dump() + "\n";
  }
  const MachineConfig& last = trace.configs.back();
  json tail = {{"outcome", outcome_name(trace.kind)},
               {"pc", last.pc},
               {"state_bindings", bindings(last.state)},
               {"stack", stack_top_first(last)},
               {"steps", steps}};
  return out + tail.dump() + "\n";
}

json verification(const VerificationReport& r) {
  json vcs = json::array();
  for (const auto& checked : r.vcs) {
    json vc = {{"label", checked.vc.label},
               {"formula_text", pretty(checked.vc.formula)},
               {"verdict", to_string(checked.result.verdict)}};
    if (checked.result.counterexample) {
      vc["counterexample"] = bindings(*checked.result.counterexample);
    }
    vcs.push_back(std::move(vc));
  }
  json out = {{"mode", to_string(r.mode)},
              {"bound", r.bound},
              {"precondition_text", pretty(r.precondition)},
              {"vcs", std::move(vcs)},
              {"triple_verdict", to_string(r.triple.verdict)}};
  if (r.triple.counterexample) out["triple_counterexample"] = bindings(*r.triple.counterexample);
  out["overall"] = to_string(r.overall());
  return out;
}

json suite(const SuiteResult& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"case_index", f.case_index},
                        {"seed", f.seed},
                        {"program_text", f.program_text},
                        {"initial_state", f.initial_state},
                        {"expectation", f.expectation},
                        {"observed", f.observed}});
  }
  return {{"suite", r.name},
          {"cases_run", r.cases_run},
          {"cases_passed", r.cases_passed},
          {"cases_skipped_divergent", r.cases_skipped_divergent},
          {"failures", std::move(failures)}};
}

}  // namespace imp::report
