#pragma once

#include <stdexcept>
#include <string>

// Shared error types. Everything derives from std::invalid_argument or
// std::domain_error so the CLI can map the whole family to exit code 2.

namespace dioph {

struct ZeroVectorError : std::invalid_argument {
  explicit ZeroVectorError(const std::string& what) : std::invalid_argument(what) {}
};

struct DivergentSumError : std::domain_error {
  explicit DivergentSumError(const std::string& what) : std::domain_error(what) {}
};

struct NotMonotoneError : std::domain_error {
  explicit NotMonotoneError(const std::string& what) : std::domain_error(what) {}
};

struct InvalidDeltaError : std::domain_error {
  explicit InvalidDeltaError(const std::string& what) : std::domain_error(what) {}
};

struct CoverageUnavailableError : std::domain_error {
  explicit CoverageUnavailableError(const std::string& what) : std::domain_error(what) {}
};

struct RadiusTooLargeError : std::domain_error {
  explicit RadiusTooLargeError(const std::string& what) : std::domain_error(what) {}
};

struct RestrictionViolatedError : std::domain_error {
  explicit RestrictionViolatedError(const std::string& what) : std::domain_error(what) {}
};

struct EpsilonOutOfRangeError : std::domain_error {
  explicit EpsilonOutOfRangeError(const std::string& what) : std::domain_error(what) {}
};

struct DegenerateChannelError : std::domain_error {
  explicit DegenerateChannelError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace dioph
