#pragma once

#include <stdexcept>
#include <string>

namespace twolayer {

/// Base class of every failure raised by the solvers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class NonFiniteEvaluation : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// The shell integration reached r_max without the solution crossing sigmaBar.
class EventNotReached : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  using Error::Error;
};

class InadmissibleK : public Error {
 public:
  using Error::Error;
};

class PresetMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace twolayer
