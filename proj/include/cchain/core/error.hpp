#pragma once

#include <stdexcept>
#include <string>

namespace cchain {

/// Violated mathematical precondition. The CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cchain
