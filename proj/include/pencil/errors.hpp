#pragma once

#include <stdexcept>
#include <string>

namespace pencil {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// potential validation
struct NonPositiveBeta : Error {
  using Error::Error;
};
struct NonFiniteCoefficient : Error {
  using Error::Error;
};

// series evaluation
struct OutOfRange : Error {
  using Error::Error;
};
struct NearPole : Error {
  using Error::Error;
};

// recurrence inversion
struct IncompleteTable : Error {
  using Error::Error;
};
struct ConsistencyMismatch : Error {
  using Error::Error;
};

// eigenvalue finder
struct ContourThroughPole : Error {
  using Error::Error;
};
struct NonConvergence : Error {
  using Error::Error;
};

// spectral data assembly / consumption
struct RadiusConflict : Error {
  int n;
  explicit RadiusConflict(int n_, const std::string& msg) : Error(msg), n(n_) {}
};
struct MissingCircle : Error {
  using Error::Error;
};
struct IllConditionedRatio : Error {
  using Error::Error;
};

// inverse solver
struct GenericityFailure : Error {
  int index;
  explicit GenericityFailure(int index_, const std::string& msg)
      : Error(msg), index(index_) {}
};
struct NonPhysicalBeta : Error {
  using Error::Error;
};
struct NoBetaSource : Error {
  using Error::Error;
};

// integration oracle
struct StepSizeUnderflow : Error {
  using Error::Error;
};

// file / JSON front end
struct ParseError : Error {
  using Error::Error;
};

}  // namespace pencil
