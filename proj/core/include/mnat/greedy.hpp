#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mnat/lattice.hpp"
#include "mnat/mchecker.hpp"
#include "mnat/random.hpp"

namespace mnat {

/// One run of the greedy-style procedure: x_0 = 0, x_k = x_{k-1} + e_{i_k},
/// with the local error of every chosen direction recorded.
struct Trajectory {
    std::vector<Point> points;           // x_0, ..., x_K
    std::vector<std::size_t> directions; // i_1, ..., i_K (0 = stay)
    std::vector<LocalError> step_errors; // err(i_k | x_{k-1})

    const Point& final_point() const { return points.back(); }
    bool has_infinite_error() const {
        for (const LocalError& e : step_errors) {
            if (e.is_infinite()) return true;
        }
        return false;
    }
    double error_sum() const; // requires all errors finite
};

/// Chooses the update direction for step k (1-based) at the current point.
/// Must return a direction that keeps the trajectory inside the region.
using Selector = std::function<std::size_t(std::size_t step, const Point& current)>;

/// Directions {0} u {i : x + e_i in X}; 0 is always listed first.
std::vector<std::size_t> feasible_directions(const FeasibleRegion& region, const Point& x);

/// argmax_{i} f(x + e_i) over feasible directions; ties broken toward 0
/// first, then the smallest index.
std::size_t exact_greedy_direction(const Valuation& f, const FeasibleRegion& region,
                                   const Point& x);

/// Standard greedy: exact for valuations with the exchange property.
/// Requires 0 in dom f.
Trajectory greedy_exact(const Valuation& f, int budget);

/// Greedy-style procedure with externally chosen directions. Throws
/// InfeasibleDirection when the selector steps outside the region.
Trajectory greedy_with_selector(const Valuation& f, int budget, const Selector& select);

/// Selector factories used by the CLI and the audits.
Selector zero_selector();
Selector worst_feasible_selector(Valuation f, int budget);
Selector random_feasible_selector(Valuation f, int budget, std::uint64_t seed);

/// Outcome of checking one trajectory against the additive-robustness
/// guarantee: f(x_K) >= f(x*) - sum_k err(i_k | x_{k-1}), plus the
/// per-step reachable-set inequality
/// max_{Y_k} f >= max_{Y_{k-1}} f - err(i_k | x_{k-1}).
struct RobustnessAudit {
    double final_value = 0.0;
    double optimal_value = 0.0;
    Point optimum;
    bool vacuous = false;    // some step error is infinite
    double error_sum = 0.0;  // finite part only meaningful when !vacuous
    double slack = 0.0;      // final - (opt - error_sum)
    std::vector<double> step_slacks; // per-step slack; +inf marks vacuous steps

    bool passed(double tol = kCheckTolerance) const;
};

RobustnessAudit audit_robustness(const Valuation& f, const Trajectory& traj,
                                 const FeasibleRegion& region,
                                 std::uint64_t cap = kEnumerationCap);

} // namespace mnat
