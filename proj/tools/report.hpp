#pragma once

// Line-delimited JSON encodings used by the `--format machine-readable`
// outputs of the imp tool. Every record is one JSON object on one line.
//
//   trace   {"step_index", "command_text", "state_bindings": {name: value}}
//           then {"status", "steps"}
//   exec    {"step", "pc", "stack": [top, ...], "changed_binding"?: {name: value}}
//           then {"outcome", "pc", "state_bindings", "stack", "steps"}
//   verify  {"mode", "bound", "precondition_text",
//            "vcs": [{"label", "formula_text", "verdict", "counterexample"?}],
//            "triple_verdict", "triple_counterexample"?, "overall"}
//   suites  {"suite", "cases_run", "cases_passed", "cases_skipped_divergent",
//            "failures": [{"case_index", "seed", "program_text",
//                          "initial_state", "expectation", "observed"}]}

#include <string>

#include "json.hpp"

#include "imp/harness.hpp"
#include "imp/hoare.hpp"
#include "imp/machine.hpp"
#include "imp/small_step.hpp"

namespace imp::report {

using nlohmann::json;

json bindings(const State& s);
json stack_top_first(const MachineConfig& cfg);

std::string trace_lines(const StepTrace& trace);
std::string machine_trace_lines(const MachineTrace& trace, std::size_t steps);
json verification(const VerificationReport& r);
json suite(const SuiteResult& r);

const char* outcome_name(MachineOutcome::Kind kind);

}  // namespace imp::report
