#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace imp {

// Machine and source semantics share one integer type. Addition wraps
// modulo 2^64 (two's complement) in both the interpreters and the VM.
using Value = std::int64_t;
using Identifier = std::string;

inline Value wrapping_add(Value a, Value b) {
  return static_cast<Value>(static_cast<std::uint64_t>(a) +
                            static_cast<std::uint64_t>(b));
}

bool is_valid_identifier(std::string_view name);

// Total map from identifiers to integers; unbound names read as 0.
//
// A State is a value: update() returns a new state and never touches the
// receiver. Two states compare equal iff they agree on every identifier, so
// an explicit `x=0` binding equals the empty state.
class State {
 public:
  using Binding = std::pair<Identifier, Value>;

  State() = default;
  State(std::initializer_list<Binding> bindings);

  Value read(std::string_view name) const;
  [[nodiscard]] State update(std::string_view name, Value value) const;

  bool is_bound(std::string_view name) const;

  // Explicit bindings, sorted by name.
  const std::vector<Binding>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }

  friend bool operator==(const State& lhs, const State& rhs);

 private:
  std::vector<Binding> bindings_;
};

// `{x=1, y=2}`; explicit bindings only.
std::string to_string(const State& s);

}  // namespace imp
