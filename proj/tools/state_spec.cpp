#include "state_spec.hpp"

#include <charconv>
#include <string>

namespace imp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

State parse_state_spec(std::string_view text) {
  State s;
  if (trim(text).empty()) return s;
  while (true) {
    std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw StateSpecError("state entry '" + std::string(item) + "' is not name=value");
    }
    std::string_view name = trim(item.substr(0, eq));
    std::string_view digits = trim(item.substr(eq + 1));
    if (!is_valid_identifier(name)) {
      throw StateSpecError("invalid variable name '" + std::string(name) + "'");
    }
    Value value = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
      throw StateSpecError("invalid value '" + std::string(digits) + "' for " +
                           std::string(name));
    }
    if (s.is_bound(name)) {
      throw StateSpecError("variable '" + std::string(name) + "' given twice");
    }
    s = s.update(name, value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return s;
}

}  // namespace imp
