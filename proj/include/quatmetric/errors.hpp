#pragma once

#include <stdexcept>
#include <string>

namespace quatmetric {

// Base class for every failure raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct ZeroPoint : Error { using Error::Error; };
struct ChartSingularity : Error { using Error::Error; };
struct ProfileNotInvertible : Error { using Error::Error; };
struct NotSO3 : Error { using Error::Error; };
struct ZeroTau : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct SingularMetric : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace quatmetric
