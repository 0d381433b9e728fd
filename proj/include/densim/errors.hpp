#pragma once

#include <stdexcept>

namespace densim {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear algebra and state validation
struct NotHermitian : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct TraceNotOne : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct DimFactorMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NegativeProbability : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct EmptyList : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct NonRealExpectation : Error { using Error::Error; };

// Phase space
struct GridMismatch : Error { using Error::Error; };
struct UnstableStep : Error { using Error::Error; };

// Measurement
struct InvalidProjectors : Error { using Error::Error; };

// Scenarios and CLI
struct InvalidConfig : Error { using Error::Error; };
struct FileNotFound : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct UnknownScenario : Error { using Error::Error; };
struct InvalidParam : Error { using Error::Error; };

}  // namespace densim
