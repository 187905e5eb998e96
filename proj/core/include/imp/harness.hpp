#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "imp/assertion.hpp"
#include "imp/hoare.hpp"
#include "imp/machine.hpp"
#include "imp/small_step.hpp"
#include "imp/syntax.hpp"

namespace imp {

struct GenConfig {
  std::size_t max_depth = 6;
  std::size_t max_vars = 4;
  Value literal_lo = -4;
  Value literal_hi = 4;
  double loop_probability = 0.25;
  std::uint64_t seed = 0xC0FFEE;

  // Throws std::invalid_argument when the ranges are inconsistent.
  void validate() const;
  // x, y, z, w, then v4, v5, ...
  std::vector<Identifier> variables() const;
};

// Deterministic random source: std::mt19937_64 seeded through std::seed_seq
// (both fully specified by the standard), with bounded draws done by
// rejection sampling here rather than by the implementation-defined
// std::uniform_int_distribution. Streams for individual cases are derived
// from (seed, stream) so cases can be replayed in isolation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi].
  Value between(Value lo, Value hi);
  bool chance(double p);
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

AExp gen_aexp(const GenConfig& cfg, Rng& rng, std::size_t depth);
BExp gen_bexp(const GenConfig& cfg, Rng& rng, std::size_t depth);
Com gen_com(const GenConfig& cfg, Rng& rng);
Com gen_com(const GenConfig& cfg, Rng& rng, std::size_t depth);
Assertion gen_assertion(const GenConfig& cfg, Rng& rng, std::size_t depth);
// Binds a random subset of cfg.variables() to literals in range.
State gen_state(const GenConfig& cfg, Rng& rng);
Program gen_program(Rng& rng, std::size_t max_len);

struct FailureRecord {
  std::size_t case_index = 0;
  std::uint64_t seed = 0;
  std::string program_text;
  std::string initial_state;  // `x=1,y=-2`, accepted by the cli's --state
  std::string expectation;
  std::string observed;
};

struct SuiteResult {
  std::string name;
  std::size_t cases_run = 0;
  std::size_t cases_passed = 0;
  std::size_t cases_skipped_divergent = 0;
  std::vector<FailureRecord> failures;

  bool ok() const { return failures.empty(); }
  double skipped_fraction() const {
    return cases_run == 0 ? 0.0
                          : static_cast<double>(cases_skipped_divergent) / cases_run;
  }
  void merge(const SuiteResult& other);
};

// `x=1,y=-2` (explicit bindings, sorted).
std::string state_spec(const State& s);

inline constexpr std::size_t kDefaultFuel = 10'000;
// Fuel translation factor between big-step rule applications and machine
// instructions; the compiler suite runs the VM with fuel F*C*(1+|c|).
inline constexpr std::size_t kCompilerFuelFactor = 16;

// Fuel used on the other side of a cross-semantics comparison.
inline constexpr std::size_t cross_fuel(std::size_t fuel) { return 4 * fuel + 4; }

using SmallStepFn = std::function<std::optional<ProgConfig>(const ProgConfig&)>;

// Completed small-step traces agree with terminating big-step runs, both
// directions. `step` is injectable so a deliberately broken stepper can prove
// the suite is not vacuous.
SuiteResult suite_small_big(std::size_t cases, const GenConfig& cfg,
                            std::size_t fuel = kDefaultFuel,
                            const SmallStepFn& step = small_step);

// One small step followed by big-step reaches the same final state as
// big-stepping directly, from random reachable non-final configurations.
SuiteResult suite_one_step_continue(std::size_t cases, const GenConfig& cfg,
                                    std::size_t fuel = kDefaultFuel);

// Compiler correctness against big-step, plus the exec / exec_n
// correspondence. `terminating_cases` counts cases whose source terminates;
// divergent draws are skipped (up to a cap) and reported.
SuiteResult suite_compiler(std::size_t terminating_cases, const GenConfig& cfg,
                           std::size_t fuel = kDefaultFuel);

SuiteResult suite_big_step_determinism(std::size_t cases, const GenConfig& cfg,
                                       std::size_t fuel = kDefaultFuel);
SuiteResult suite_small_step_determinism(std::size_t cases, const GenConfig& cfg,
                                         std::size_t fuel = kDefaultFuel);

SuiteResult suite_parse_round_trip(std::size_t cases, const GenConfig& cfg);
SuiteResult suite_asm_round_trip(std::size_t cases, const GenConfig& cfg);

SuiteResult suite_substitution(std::size_t cases, const GenConfig& cfg);

struct HoareSuiteConfig {
  Value bound = 5;
  Value loop_bound = 8;
  std::size_t fuel = kDefaultFuel;
  // Loop-free programs for the rule families are kept shallow: wp doubles at
  // every conditional.
  std::size_t program_depth = 3;
};

SuiteResult suite_entails_laws(std::size_t cases, const GenConfig& cfg,
                               const HoareSuiteConfig& hcfg = {});
SuiteResult suite_strengthen_pre(std::size_t cases, const GenConfig& cfg,
                                 const HoareSuiteConfig& hcfg = {});
SuiteResult suite_conseq(std::size_t cases, const GenConfig& cfg,
                         const HoareSuiteConfig& hcfg = {});
SuiteResult suite_wp_semantics(std::size_t cases, const GenConfig& cfg,
                               const HoareSuiteConfig& hcfg = {});

struct LoopFixture {
  std::string name;
  std::string source;  // a single annotated while loop
};

const std::vector<LoopFixture>& while_fun_fixtures();

// For each fixture `while (b) invariant (I) measure (f) { c }`: vcgen in Total
// mode against I && !b is all-Valid, and the triple {I} loop {I && !b} holds
// with termination, both at hcfg.loop_bound.
SuiteResult suite_while_fun(const HoareSuiteConfig& hcfg = {});

// All Hoare families above, merged. The fixed loop fixtures are included
// whenever cases > 0.
SuiteResult suite_hoare(std::size_t cases, const GenConfig& cfg,
                        const HoareSuiteConfig& hcfg = {});

}  // namespace imp
