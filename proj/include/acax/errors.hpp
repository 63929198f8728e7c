#pragma once

#include <stdexcept>
#include <string>

namespace acax {

class NonUnitDirection : public std::invalid_argument {
 public:
  explicit NonUnitDirection(const std::string& what) : std::invalid_argument(what) {}
};

class ZeroDirection : public std::invalid_argument {
 public:
  explicit ZeroDirection(const std::string& what) : std::invalid_argument(what) {}
};

class InvalidMaterial : public std::invalid_argument {
 public:
  explicit InvalidMaterial(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a stiffness tensor does not have the orthorhombic-or-higher
// Christoffel structure in the working frame.
class NotRTHC : public std::runtime_error {
 public:
  explicit NotRTHC(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace acax
