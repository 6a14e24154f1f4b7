#pragma once

#include <stdexcept>
#include <string>

namespace xigua {

// Malformed input: bad board definitions, placements, feature vectors, ...
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A move or operation that is well-formed but not allowed by the rules.
class RuleViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when a constructed object fails its own consistency check.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xigua
