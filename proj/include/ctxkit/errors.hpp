#ifndef CTXKIT_ERRORS_HPP
#define CTXKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctx {

// Base class for all toolkit errors. Subclasses carry no extra state; the
// what() string holds the details (offending edge, sums, names, ...).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Scenario construction
struct EmptyEdge : Error { using Error::Error; };
struct UncoveredVertex : Error { using Error::Error; };
struct DuplicateVertexInEdge : Error { using Error::Error; };
struct InvalidDimension : Error { using Error::Error; };

// Probabilistic models
struct OutOfRange : Error { using Error::Error; };
struct EdgeNotNormalized : Error { using Error::Error; };
struct SearchBudgetExceeded : Error { using Error::Error; };
struct StructureMismatch : Error { using Error::Error; };

// Empirical tables
struct RowNotNormalized : Error { using Error::Error; };
struct MarginalMismatch : Error { using Error::Error; };
struct StateSpaceTooLarge : Error { using Error::Error; };

// Numerical solvers
struct SolverDidNotConverge : Error { using Error::Error; };

// Quantum kernel
struct NotAState : Error { using Error::Error; };
struct NotAnEffect : Error { using Error::Error; };
struct NotAPVM : Error { using Error::Error; };
struct IncidenceMismatch : Error { using Error::Error; };
struct EpsilonOutOfRange : Error { using Error::Error; };

// Pre/post-selection
struct ZeroPostSelectionProbability : Error { using Error::Error; };
struct OrthogonalPrePost : Error { using Error::Error; };
struct FamilyNotClosed : Error { using Error::Error; };

// Ontological models
struct UnknownName : Error { using Error::Error; };
struct NotUnitVector : Error { using Error::Error; };

} // namespace ctx

#endif
