#pragma once

#include <stdexcept>
#include <string>

namespace mnat {

/// Base class for all library-level error conditions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A brute-force enumeration would exceed the configured point cap.
/// Callers should fall back to sampling instead of enumerating.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// An interval restriction [a, b] does not meet the valuation's domain box.
class EmptyIntersection : public Error {
public:
    using Error::Error;
};

/// A per-coordinate table has increasing forward differences.
class NonConcaveTable : public Error {
public:
    using Error::Error;
};

/// A round budget is too small for the requested bandit run.
class BudgetTooSmall : public Error {
public:
    using Error::Error;
};

/// A direction selector stepped outside the feasible region.
class InfeasibleDirection : public Error {
public:
    using Error::Error;
};

/// An explicit base list violates the matroid base-exchange axiom.
class ExchangeAxiomViolation : public Error {
public:
    using Error::Error;
};

/// The ground set is too large for an exhaustive expert/comparator scan.
class GroundSetTooLarge : public Error {
public:
    using Error::Error;
};

/// A noisy oracle observed a mean value outside the declared [0, 1] range.
class RangeViolation : public Error {
public:
    using Error::Error;
};

/// A matroid's base family is larger than the enumeration cap.
class BaseEnumerationCapExceeded : public Error {
public:
    using Error::Error;
};

/// A noisy oracle was queried at a point outside the effective domain.
class QueryOutsideDomain : public Error {
public:
    using Error::Error;
};

} // namespace mnat
