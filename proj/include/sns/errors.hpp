#ifndef SNS_ERRORS_HPP
#define SNS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sns {

// Bad argument value (negative time, p < 1, index out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exponent relation or configuration entry violated.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Field shape, slab or symmetry invariant violated.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input data does not satisfy an operator precondition (divergence, trace).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sns

#endif
