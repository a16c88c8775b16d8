#pragma once

#include <stdexcept>
#include <string>

namespace toriclg {

/// Malformed input text (not JSON, missing keys, wrong shapes).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input violating a mathematical invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear system has no solution; upstream an exactness hypothesis failed.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// d_out * d_in != 0 for a pair that was supposed to form a complex.
class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal postcondition. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace toriclg
