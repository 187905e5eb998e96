#include "imp/state.hpp"

#include <algorithm>
#include <cctype>

namespace imp {

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_';
  });
}

namespace {

template <class Bindings>
auto find_binding(Bindings& bindings, std::string_view name) {
  return std::lower_bound(
      bindings.begin(), bindings.end(), name,
      [](const State::Binding& b, std::string_view n) { return b.first < n; });
}

}  // namespace

State::State(std::initializer_list<Binding> bindings) {
  for (const auto& [name, value] : bindings) *this = update(name, value);
}

Value State::read(std::string_view name) const {
  auto it = find_binding(bindings_, name);
  if (it != bindings_.end() && it->first == name) return it->second;
  return 0;
}

State State::update(std::string_view name, Value value) const {
  State next = *this;
  auto it = find_binding(next.bindings_, name);
  if (it != next.bindings_.end() && it->first == name) {
    it->second = value;
  } else {
    next.bindings_.insert(it, Binding{Identifier(name), value});
  }
  return next;
}

bool State::is_bound(std::string_view name) const {
  auto it = find_binding(bindings_, name);
  return it != bindings_.end() && it->first == name;
}

bool operator==(const State& lhs, const State& rhs) {
  // Merge walk over both sorted binding lists; a name missing on one side
  // reads as 0 there.
  auto a = lhs.bindings_.begin();
  auto b = rhs.bindings_.begin();
  while (a != lhs.bindings_.end() || b != rhs.bindings_.end()) {
    if (b == rhs.bindings_.end() ||
        (a != lhs.bindings_.end() && a->first < b->first)) {
      if (a->second != 0) return false;
      ++a;
    } else if (a == lhs.bindings_.end() || b->first < a->first) {
      if (b->second != 0) return false;
      ++b;
    } else {
      if (a->second != b->second) return false;
      ++a;
      ++b;
    }
  }
  return true;
}

std::string to_string(const State& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += name;
    out += '=';
    out += std::to_string(value);
  }
  out += '}';
  return out;
}

}  // namespace imp
