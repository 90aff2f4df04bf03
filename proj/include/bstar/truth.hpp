#pragma once

#include <cstdint>
#include <string_view>

namespace bstar {

/// Three-valued verdict used throughout the evaluation layers. `unknown`
/// absorbs partiality: a query that reaches past the finite part of an
/// oracle or a search that exhausts its budget is neither true nor false.
enum class Truth : std::uint8_t { is_false = 0, is_true = 1, unknown = 2 };

constexpr Truth truth_of(bool b) { return b ? Truth::is_true : Truth::is_false; }

constexpr bool is_true(Truth t) { return t == Truth::is_true; }
constexpr bool is_false(Truth t) { return t == Truth::is_false; }
constexpr bool is_unknown(Truth t) { return t == Truth::unknown; }

constexpr Truth truth_not(Truth t) {
  switch (t) {
    case Truth::is_false: return Truth::is_true;
    case Truth::is_true: return Truth::is_false;
    default: return Truth::unknown;
  }
}

// Kleene connectives.
constexpr Truth truth_and(Truth a, Truth b) {
  if (a == Truth::is_false || b == Truth::is_false) return Truth::is_false;
  if (a == Truth::is_true && b == Truth::is_true) return Truth::is_true;
  return Truth::unknown;
}

constexpr Truth truth_or(Truth a, Truth b) {
  if (a == Truth::is_true || b == Truth::is_true) return Truth::is_true;
  if (a == Truth::is_false && b == Truth::is_false) return Truth::is_false;
  return Truth::unknown;
}

constexpr std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::is_false: return "false";
    case Truth::is_true: return "true";
    default: return "unknown";
  }
}

}  // namespace bstar
