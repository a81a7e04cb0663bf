#pragma once

#include <stdexcept>
#include <string>

namespace flp {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad parameters, domain violations, malformed documents.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// File read/write failures.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Instance generation exhausted its retry budget.
class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& what) : Error(what) {}
};

}  // namespace flp
