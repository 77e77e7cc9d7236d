#pragma once

#include <stdexcept>
#include <string>

namespace logpic {

/// Malformed or inconsistent input (unknown ids, dimension mismatch, broken invariants).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The input is well-formed but outside what exact rank theory supports here
/// (components of genus >= 2, non-semistable nodes, marked points).
class UnsupportedModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace logpic
