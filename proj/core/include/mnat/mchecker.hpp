#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mnat/lattice.hpp"

namespace mnat {

/// Witness of a failed exchange-style check: the pair (x, y) and, where
/// applicable, the direction i with x(i) > y(i) for which no exchange
/// partner j exists. `clause` is "exchange", "a", or "b".
struct ExchangeWitness {
    Point x;
    Point y;
    std::size_t direction = 0;
    std::string clause = "exchange";
};

struct ExchangeReport {
    bool pass = true;
    std::optional<ExchangeWitness> witness;
    std::uint64_t pairs_checked = 0;
};

/// Exhaustive exchange-axiom check over dom f: for every x, y in dom f and
/// every i with x(i) > y(i) there must be j in {0} u {j : x(j) < y(j)} with
/// f(x) + f(y) <= f(x - e_i + e_j) + f(y + e_i - e_j) up to `tol`.
/// The witness is the first violation in lexicographic (x, y, i) order.
ExchangeReport check_exchange(const Valuation& f, double tol = kCheckTolerance,
                              std::uint64_t cap = kEnumerationCap);

/// Checks the two corollary clauses for every pair in dom f:
/// (a) if x(V) < y(V), some j in V with x(j) < y(j) has
///     f(x) + f(y) <= f(x + e_j) + f(y - e_j);
/// (b) if x(V) <= y(V), every i in V with x(i) > y(i) admits j in V with
///     x(j) < y(j) satisfying the exchange inequality.
ExchangeReport check_prop_ab(const Valuation& f, double tol = kCheckTolerance,
                             std::uint64_t cap = kEnumerationCap);

/// err(i | x): gap between the best one-step value at x and the value of
/// stepping in direction i. Infinite when f(x + e_i) = -infinity while some
/// direction stays in dom f (direction 0 always does for x in dom f).
class LocalError {
public:
    static LocalError infinite() { return LocalError(true, 0.0); }
    static LocalError finite(double v) { return LocalError(false, v); }

    bool is_infinite() const { return infinite_; }
    double value() const {
        assert(!infinite_);
        return value_;
    }

private:
    LocalError(bool inf, double v) : infinite_(inf), value_(v) {}
    bool infinite_;
    double value_;
};

/// Eq-style local error: max_{i' in V u {0}} f(x + e_i') - f(x + e_i), with
/// -infinity candidates discarded from the max. Requires x in dom f.
LocalError local_error(const Valuation& f, const Point& x, std::size_t direction);

/// Y_k: feasible points reachable from x_k with the remaining budget.
struct ReachableSet {
    std::vector<Point> points; // lexicographic order
    Point anchor;              // x_k
    int remaining_budget = 0;  // K - k
};

/// Y_k = {y in X : y >= x_k, y(V) <= K - k + x_k(V)} by enumeration.
/// Requires x_k in X and 0 <= step <= budget.
ReachableSet reachable_set(const FeasibleRegion& region, const Point& x_k, int step, int budget,
                           std::uint64_t cap = kEnumerationCap);

struct Maximizer {
    Point point;
    double value = 0.0;
};

/// Lexicographically-first maximizer of f over the region.
Maximizer brute_force_max(const Valuation& f, const FeasibleRegion& region,
                          std::uint64_t cap = kEnumerationCap);

} // namespace mnat
