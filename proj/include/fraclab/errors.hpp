#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Gamma-type evaluation at a pole.
class PoleError : public DomainError {
  public:
    using DomainError::DomainError;
};

// Input violates a hypothesis that the existence theory requires of it.
class HypothesisError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace fraclab
