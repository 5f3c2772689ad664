#pragma once

#include <stdexcept>
#include <string>

namespace statkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rank deficiency in a frame or parameterisation.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A field was evaluated outside its declared chart or parameter domain.
class ChartBoundary : public Error {
 public:
  using Error::Error;
};

class NotSPD : public Error {
 public:
  using Error::Error;
};

/// Operation needs an ambient dimension the manifold does not have.
class WrongCodimension : public Error {
 public:
  using Error::Error;
};

class UnknownFixture : public Error {
 public:
  using Error::Error;
};

class ValidationFailed : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace statkit
