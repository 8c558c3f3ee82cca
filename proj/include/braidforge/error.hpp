#pragma once

#include <stdexcept>
#include <string>

namespace braidforge {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsuitable input: graph files, trees, subdivision, loop specs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation could not finish: step bounds, broken matchings, unsolvable systems.
class ComputationError : public Error {
 public:
  using Error::Error;
};

}  // namespace braidforge
