#pragma once

#include <stdexcept>
#include <string>

namespace twophoton {

/// Argument outside the domain where a function is defined or supported.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A series parameter sits on (or within rounding of) a pole of the summand.
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

/// Series did not reach the requested tolerance within the term cap.
class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// Eigen- or linear solve on the radial grid failed its residual check.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Resolvent energy too close to a bound level of the intermediate channel.
class NearResonanceError : public DomainError {
 public:
  explicit NearResonanceError(const std::string& what) : DomainError(what) {}
};

}  // namespace twophoton
