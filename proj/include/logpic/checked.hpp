#pragma once

#include <cstdint>

#include "logpic/errors.hpp"

namespace logpic {

using Chips = std::int64_t;

// Overflow is reported, never wrapped.
inline Chips checked_add(Chips a, Chips b) {
  Chips r;
  if (__builtin_add_overflow(a, b, &r)) throw InputError("integer overflow in chip arithmetic");
  return r;
}

inline Chips checked_sub(Chips a, Chips b) {
  Chips r;
  if (__builtin_sub_overflow(a, b, &r)) throw InputError("integer overflow in chip arithmetic");
  return r;
}

inline Chips checked_mul(Chips a, Chips b) {
  Chips r;
  if (__builtin_mul_overflow(a, b, &r)) throw InputError("integer overflow in chip arithmetic");
  return r;
}

/// Least non-negative residue.
inline Chips mod_floor(Chips a, Chips n) {
  Chips r = a % n;
  return r < 0 ? r + n : r;
}

/// Quotient rounded toward negative infinity, n > 0.
inline Chips floor_div(Chips a, Chips n) { return (a - mod_floor(a, n)) / n; }

}  // namespace logpic
