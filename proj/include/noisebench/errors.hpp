#pragma once

#include <stdexcept>
#include <string>

namespace noisebench {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace noisebench
