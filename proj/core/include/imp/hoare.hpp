#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "imp/assertion.hpp"
#include "imp/syntax.hpp"

namespace imp {

enum class Mode { Partial, Total };
enum class Verdict { Valid, Counterexample, Unknown };

const char* to_string(Mode mode);
const char* to_string(Verdict verdict);

// Enumerations larger than this report Unknown instead of running.
inline constexpr std::uint64_t kMaxEnumeratedStates = 10'000'000;

// Outcome of a bounded check. Valid means "valid on every enumerated state",
// never more.
struct CheckResult {
  Verdict verdict = Verdict::Valid;
  std::optional<State> counterexample;
  std::uint64_t states_checked = 0;
  std::uint64_t fuel_exhausted = 0;  // check_triple only

  bool valid() const { return verdict == Verdict::Valid; }
};

// Number of states enumerate_states() visits, saturating at UINT64_MAX.
std::uint64_t enumeration_size(std::size_t num_vars, Value bound);

// Visits every state assigning each of `vars` a value in [-bound, bound]
// (everything else reads 0). Order is lexicographic over the sorted names,
// values ascending, the first name varying slowest. Stops early when
// `visit` returns false.
template <class Visit>
void enumerate_states(const std::set<Identifier>& vars, Value bound, Visit&& visit) {
  std::vector<Identifier> names(vars.begin(), vars.end());
  State s;
  for (const auto& n : names) s = s.update(n, -bound);
  std::vector<Value> digits(names.size(), -bound);
  while (true) {
    if (!visit(static_cast<const State&>(s))) return;
    std::size_t i = names.size();
    while (i > 0) {
      --i;
      if (digits[i] < bound) {
        ++digits[i];
        s = s.update(names[i], digits[i]);
        break;
      }
      digits[i] = -bound;
      s = s.update(names[i], -bound);
      if (i == 0) return;
    }
    if (names.empty()) return;
  }
}

// Bounded entailment: P -> Q on every enumerated state over `vars`.
CheckResult entails(const Assertion& p, const Assertion& q,
                    const std::set<Identifier>& vars, Value bound);

AExp subst(const AExp& a, std::string_view x, const AExp& replacement);
Assertion subst_assertion(const Assertion& a, std::string_view x,
                          const AExp& replacement);

Assertion bexp_to_assertion(const BExp& b);

// Weakest precondition of a loop-free command; throws std::invalid_argument
// if `c` contains a loop.
Assertion wp_loop_free(const Com& c, const Assertion& q);

// Raised when a loop lacks the annotations the requested mode needs.
class AnnotationError : public std::runtime_error {
 public:
  AnnotationError(const std::string& message, SourceSpan span);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

struct VerificationCondition {
  std::string label;
  Assertion formula;
};

struct VcgenResult {
  std::vector<VerificationCondition> vcs;
  Assertion precondition;
};

// Generates verification conditions for `c` against postcondition `q`.
//
// For `while (b) invariant (I) measure (f) { body }` the loop contributes
//   preserved:      I && b -> pre(body, I)
//   decreases:      I && b && f = z -> pre(body, I && f < z)      (Total)
//   non-negative:   I && b -> 0 <= f                              (Total)
//   exit:           I && !b -> Q
// and the loop's precondition is I. The snapshot `z` is a fresh `__zN`.
VcgenResult vcgen(const AnnotatedCom& c, const Assertion& q, Mode mode);

// Semantic triple validity over the bounded state space. Counterexamples are
// initial states. In Partial mode fuel exhaustion never refutes the triple but
// turns an otherwise Valid answer into Unknown.
CheckResult check_triple(const Assertion& p, const Com& c, const Assertion& q,
                         const std::set<Identifier>& vars, Value bound,
                         std::size_t fuel, Mode mode);

struct CheckedVc {
  VerificationCondition vc;
  CheckResult result;
};

struct VerificationReport {
  Mode mode = Mode::Partial;
  Value bound = 0;
  Assertion precondition = Assertion::truth();  // computed by vcgen
  std::vector<CheckedVc> vcs;
  CheckResult triple;

  bool all_vcs_valid() const;
  // Counterexample beats Unknown beats Valid.
  Verdict overall() const;
};

// vcgen + bounded entailment of every VC (including `pre -> computed
// precondition`) + semantic triple check.
VerificationReport verify(const Assertion& pre, const AnnotatedCom& c,
                          const Assertion& post, Value bound, std::size_t fuel,
                          Mode mode);

}  // namespace imp
