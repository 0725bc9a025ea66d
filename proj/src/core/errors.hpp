#pragma once

#include <stdexcept>
#include <string>

namespace plab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class FitFailure : public Error {
 public:
  using Error::Error;
};

class InstabilityError : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class EigenFailure : public Error {
 public:
  using Error::Error;
};

class IncompatibleScales : public Error {
 public:
  using Error::Error;
};

class AssertionFailure : public Error {
 public:
  using Error::Error;
};

class PipelineAssertion : public Error {
 public:
  using Error::Error;
};

}  // namespace plab
