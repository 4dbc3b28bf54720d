#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moi {

/// Input violates a type invariant (shape, finiteness, Hermitian gate, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponents outside the range a theorem is stated for.
class RangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A stated precondition of a check does not hold (e.g. row normalization).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Work would exceed a configured resource cap; the caller must shrink the instance.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
      : std::runtime_error(what), requested_(requested), cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

}  // namespace moi
