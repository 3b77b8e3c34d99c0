#pragma once

#include <stdexcept>
#include <string>

namespace jetreduce {

// Raised when a total derivative or prolongation would exceed the configured
// jet order.
class JetOrderOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input to an operation: unknown names, wrong arity, degree clash.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an algorithm does not hold (e.g. homotopy operator on a
// non-polynomial density, nonabelian algebra where abelian is required).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity that must hold by construction failed. Signals a bug
// or inconsistent user-supplied data such as a gamma override.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jetreduce
