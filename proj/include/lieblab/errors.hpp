#pragma once
#include <stdexcept>
#include <string>

namespace lieblab {

// Bad arguments: violated preconditions, malformed descriptors, dimension
// mismatches, constraint violations at construction.
struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Function evaluated outside its domain (e.g. log at a non-positive point).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Conjugate search ran off the end of its bracket.
struct BracketError : std::runtime_error {
  explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// A suite grid point fails its hypothesis checks, or a run is misconfigured.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lieblab
