#pragma once

#include <stdexcept>
#include <string>

namespace posethom {

/// Malformed user input: bad JSON, out-of-range vertices, unknown generator.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation was requested outside the regime where it is defined,
/// e.g. integer coefficients for a functor whose values carry torsion.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition between arguments does not hold (d_out * d_in != 0, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal invariant failed. Always a bug or a non-functorial input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace posethom
