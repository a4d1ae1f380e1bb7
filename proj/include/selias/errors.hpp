#pragma once

#include <stdexcept>
#include <string>

namespace selias {

/// Raised when a request exceeds a configured size cap (table rows, simulator qubits).
/// The caller is expected to raise the cap or shrink the request.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A lattice move that leaves Young's lattice. Only a simulator bug can produce one.
class InvalidNodeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace selias
