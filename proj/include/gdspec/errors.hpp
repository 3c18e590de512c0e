#pragma once

#include <stdexcept>
#include <string>

namespace gdspec {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonIntegralShell : Error { using Error::Error; };
struct DegenerateSpectrum : Error { using Error::Error; };
struct MultiplicityNotIntegral : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct FactorizationResidual : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct UnknownGraph : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct NotSumDecomposable : Error { using Error::Error; };
struct SolverTolerance : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct RowSumViolation : Error { using Error::Error; };
struct BlowUp : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace gdspec
