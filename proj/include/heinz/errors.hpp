#pragma once

#include <stdexcept>
#include <string>

namespace heinz {

// Base class for everything this library throws.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A parameter lies outside the mathematical domain of the operation.
struct domain_error : error {
  explicit domain_error(const std::string& msg) : error(msg) {}
};

// Mismatched arity, shape, or option combination.
struct usage_error : error {
  explicit usage_error(const std::string& msg) : error(msg) {}
};

// A structural precondition (definiteness, admissible region, ...) failed.
struct precondition_error : error {
  explicit precondition_error(const std::string& msg) : error(msg) {}
};

// A matrix that must be invertible is singular to working precision.
struct singular_error : error {
  explicit singular_error(const std::string& msg) : error(msg) {}
};

// A computation produced results outside its certified accuracy.
struct numerical_error : error {
  explicit numerical_error(const std::string& msg) : error(msg) {}
};

// An iteration hit its budget; best_estimate holds the last iterate.
struct convergence_error : numerical_error {
  convergence_error(const std::string& msg, double best)
      : numerical_error(msg), best_estimate(best) {}
  double best_estimate;
};

}  // namespace heinz
