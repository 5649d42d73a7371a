#pragma once

#include <stdexcept>
#include <string>

namespace dpa {

// Input/parameter problems map to CLI exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unexpected internal states map to CLI exit code 2.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositiveParameterError : ValidationError {
  using ValidationError::ValidationError;
};

struct AlphaGammaSumError : ValidationError {
  using ValidationError::ValidationError;
};

struct DegenerateCaseError : ValidationError {
  using ValidationError::ValidationError;
};

struct GridTooSmallError : ValidationError {
  using ValidationError::ValidationError;
};

struct StateSpaceExplosionError : ValidationError {
  using ValidationError::ValidationError;
};

struct CapacityExceededError : ValidationError {
  using ValidationError::ValidationError;
};

struct BoxTooSmallError : ValidationError {
  using ValidationError::ValidationError;
};

struct ZeroPredictedVarianceError : ValidationError {
  using ValidationError::ValidationError;
};

struct SingularStepError : InternalError {
  using InternalError::InternalError;
};

}  // namespace dpa
