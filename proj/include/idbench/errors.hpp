#pragma once

#include <stdexcept>
#include <string>

namespace idbench {

// Malformed input: bad strings, mismatched sizes, out-of-range parameters.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a configured resource cap (dense dimension, enumeration size).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace idbench
