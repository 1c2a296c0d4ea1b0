#pragma once

#include <stdexcept>
#include <string>

namespace stagger {

// Invalid input: malformed instance, mismatched shift vector, violated
// precondition. CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configured budget was exceeded. Never downgraded to a silent
// approximation. CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stagger
