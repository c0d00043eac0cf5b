#pragma once

#include <stdexcept>
#include <string>

namespace mathieu {

struct MathieuError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integration
struct StepUnderflow : MathieuError { using MathieuError::MathieuError; };
struct MaxStepsExceeded : MathieuError { using MathieuError::MathieuError; };

// Floquet extraction
struct ComplexMultipliers : MathieuError { using MathieuError::MathieuError; };
struct NegativeMultiplier : MathieuError { using MathieuError::MathieuError; };
struct NonPeriodic : MathieuError { using MathieuError::MathieuError; };

// Hill determinant
struct NoConvergence : MathieuError { using MathieuError::MathieuError; };
struct SingularTruncation : MathieuError { using MathieuError::MathieuError; };
struct DomainError : MathieuError { using MathieuError::MathieuError; };

// WKB
struct TurningPoint : MathieuError { using MathieuError::MathieuError; };

// Study harness
struct InsufficientPoints : MathieuError { using MathieuError::MathieuError; };
struct AllPointsFailed : MathieuError { using MathieuError::MathieuError; };

struct InvalidParams : MathieuError { using MathieuError::MathieuError; };

} // namespace mathieu
