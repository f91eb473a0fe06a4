#pragma once

#include <stdexcept>
#include <string>

namespace gwc {

/// Raised when an argument violates an operation's precondition
/// (bad subsystem set, non-normalized state, omega out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for inputs outside the supported desk-scale envelope
/// (roof rank > 4, non-qubit inputs to qubit-only relations, ...).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace gwc
