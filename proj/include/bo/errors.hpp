#pragma once

#include <stdexcept>
#include <string>

namespace bo {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- rational_data ---
struct PoleProximity : Error { using Error::Error; };
struct NonpositiveTime : Error { using Error::Error; };
struct PathTooCloseToPole : Error { using Error::Error; };

// --- rootfind ---
struct SolverDivergence : Error { using Error::Error; };

// --- caustic ---
struct NoCatastrophe : Error { using Error::Error; };
struct ContinuationStall : Error { using Error::Error; };
struct OffBranch : Error { using Error::Error; };
struct OnCaustic : Error { using Error::Error; };

// --- quadrature ---
struct MaxSubdivision : Error { using Error::Error; };
struct NonFiniteIntegrand : Error { using Error::Error; };
struct NoDecayDetected : Error { using Error::Error; };
struct PoleOrderTooHigh : Error { using Error::Error; };

// --- specfun ---
struct DomainExceeded : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct ZeroDivisor : Error { using Error::Error; };

// --- exact_solver ---
struct NoAdmissibleContour : Error { using Error::Error; };
struct ResonantEpsilon : Error { using Error::Error; };
struct DenominatorTiny : Error { using Error::Error; };

// --- asymptotics ---
struct FrameIncomplete : Error { using Error::Error; };
struct InconsistentCoordinates : Error { using Error::Error; };
struct SaddleTooClose : Error { using Error::Error; };

// --- verify ---
struct DegenerateInput : Error { using Error::Error; };

} // namespace bo
