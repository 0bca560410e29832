#pragma once

#include <stdexcept>
#include <string>

namespace surfext {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arithmetic and precondition failures.
struct PreconditionViolated : Error { using Error::Error; };
struct NotAUnit : Error { using Error::Error; };
struct ArithmeticOverflow : Error { using Error::Error; };

// Orbifold data.
struct NonIntegerGenus : Error { using Error::Error; };
struct NegativeGenus : Error { using Error::Error; };
struct IndexNotDividing : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct NegativeBetti : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };

// Move calculus.
struct InvalidMove : Error { using Error::Error; };
struct RestrictedMove : Error { using Error::Error; };
struct NormalizationImpossible : Error { using Error::Error; };

// Extendability and conjugacy.
struct NotExtendable : Error { using Error::Error; };
struct InvalidClass : Error { using Error::Error; };
struct UncappedInfiniteFamily : Error { using Error::Error; };
struct CriterionNotSubgroup : Error { using Error::Error; };

// Lens spaces.
struct NotCoprime : Error { using Error::Error; };

// Oracle budgets.
struct BudgetExceeded : Error { using Error::Error; };

}  // namespace surfext
