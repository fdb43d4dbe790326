#pragma once

#include <stdexcept>
#include <string>

namespace hwlab {

/// Base class for all library errors. Each concrete type corresponds to a
/// distinct failure mode so callers can catch precisely.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonPrimeP : Error { using Error::Error; };
struct BoundExceeded : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct MixedModuli : Error { using Error::Error; };

struct NotGenuine : Error { using Error::Error; };
struct InconsistentMultiplicity : Error { using Error::Error; };
struct DegenerateForm : Error { using Error::Error; };
struct NotAPolarization : Error { using Error::Error; };

struct MixedGroups : Error { using Error::Error; };

struct NoLagrangian : Error { using Error::Error; };
struct SchurFailure : Error { using Error::Error; };
struct ZeroTrace : Error { using Error::Error; };
struct BadGrading : Error { using Error::Error; };

struct AllCoefficientsNonzero : Error { using Error::Error; };
struct OracleMismatch : Error { using Error::Error; };
struct OrderDivisibleByP : Error { using Error::Error; };
struct NoRecurrenceWithinBound : Error { using Error::Error; };

struct ConfigParse : Error { using Error::Error; };
struct IoFailure : Error { using Error::Error; };

}  // namespace hwlab
