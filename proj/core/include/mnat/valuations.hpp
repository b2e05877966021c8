#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mnat/lattice.hpp"
#include "mnat/matroid.hpp"
#include "mnat/random.hpp"

namespace mnat {

/// Separable concave resource-allocation objective: per-coordinate concave
/// tables summed under a budget.
struct SeparableConcaveSpec {
    /// tables[i][z] = f_i(z) for z in {0, ..., hi_i}; each table must have
    /// non-increasing forward differences.
    std::vector<std::vector<double>> tables;
    int budget = 0;
};

/// value(x) = sum_i f_i(x_i) when x >= 0 and x(V) <= K, else -infinity.
/// Throws NonConcaveTable when a table's forward differences increase.
Valuation separable_concave(const SeparableConcaveSpec& spec);

/// Weighted bipartite allocation instance. Left vertices form the ground
/// set; x_i units of supply at left vertex i are assigned to distinct
/// right vertices (each right vertex absorbs at most one unit), and any
/// unit may stay unassigned at zero weight. On {0,1}^V with w >= 0 the
/// value is the max-weight matching of the selected items.
struct BipartiteFlowSpec {
    struct Edge {
        std::size_t left = 0;
        std::size_t right = 0;
        double weight = 0.0;
    };
    std::size_t left_count = 0;
    std::size_t right_count = 0;
    std::vector<Edge> edges;
    std::vector<int> source_caps; // domain box upper bound per left vertex
};

/// value(x) = max assignment weight as described on BipartiteFlowSpec;
/// -infinity outside [0, caps]. Solved by exhaustive assignment
/// enumeration for |E| <= 20 and by min-cost flow above that.
Valuation oxs_maxflow(const BipartiteFlowSpec& spec);

namespace detail {
// Both solvers are exposed so tests can cross-check them on one instance.
double oxs_value_enumerate(const BipartiteFlowSpec& spec, const Point& x);
double oxs_value_flow(const BipartiteFlowSpec& spec, const Point& x);
} // namespace detail

/// tau(x) = min over bases B of ||x - 1_B||_1, by scan over the base list.
/// x must lie in {0,1}^V.
int tau(const Matroid& matroid, const Point& x);

/// f(x) = 1 - tau(x)/N on {0,1}^V: equals 1 exactly on base indicators
/// and is at most 1 - 1/N elsewhere.
Valuation matroid_distance(const Matroid& matroid);

/// Indicator oracle: 0 on base indicators, -infinity elsewhere. Note that
/// 0 may lie outside the effective domain; this is a test fixture, not a
/// maximization target.
Valuation matroid_indicator(const Matroid& matroid);

/// Explicit value list over [0, box_hi] in lexicographic order; nullopt
/// entries are -infinity. Used for hand-built fixtures (including
/// non-concave negatives) and the "table" JSON family.
Valuation dense_table(Point box_hi, std::vector<std::optional<double>> values,
                      std::string name = "table");

/// Random separable instance with tables f_i(z) = c_i * (1 - 2^-z),
/// c_i drawn uniformly from [0.2, 1]; concave and bounded in [0, 1) per
/// coordinate by construction.
SeparableConcaveSpec random_separable_spec(std::size_t n, int box_hi, int budget,
                                           RandomStream& rng);

} // namespace mnat
