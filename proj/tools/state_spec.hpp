#pragma once

#include <stdexcept>
#include <string_view>

#include "imp/state.hpp"

namespace imp {

class StateSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses `x=1,y=-2`. The empty string is the empty state. Whitespace around
// names and values is ignored; duplicate names are rejected.
State parse_state_spec(std::string_view text);

}  // namespace imp
