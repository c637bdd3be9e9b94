#pragma once

#include <stdexcept>
#include <string>

namespace annealsat {

// Caller passed data with the wrong shape (length mismatch, bad index).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed DIMACS or QUBO text.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid sampler / encoder / postprocess parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition on the value (not the shape) was violated.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Experiment could not be carried out (e.g. no satisfiable instance found).
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace annealsat
