#pragma once

// Shared instances used across the unit and acceptance suites.

#include <array>

#include "mnat/matroid.hpp"
#include "mnat/valuations.hpp"

namespace mnat::fixtures {

/// Strictly supermodular set function on {0,1}^2: f(0)=f(e1)=f(e2)=0,
/// f(1,1)=1. Fails the exchange check with witness x=(1,1), y=(0,0), i=1.
inline Valuation supermodular() {
    return dense_table(Point({1, 1}), {0.0, 0.0, 0.0, 1.0}, "supermodular");
}

/// Separable N=2 instance: tables (0, 1, 1.5) and (0, 0.8, 1.0), K=2.
/// Optimum (1,1) with value 1.8; greedy directions (1, 2).
inline SeparableConcaveSpec separable2_spec() {
    return SeparableConcaveSpec{{{0.0, 1.0, 1.5}, {0.0, 0.8, 1.0}}, 2};
}
inline Valuation separable2() { return separable_concave(separable2_spec()); }

/// Bandit benchmark instance: N=4, K=2, tables c_i * (1 - 2^-z) with
/// c = (0.30, 0.27, 0.24, 0.21). Range [0, 0.285]; optimum (1,1,0,0).
inline SeparableConcaveSpec separable4_spec() {
    SeparableConcaveSpec spec;
    spec.budget = 2;
    const double c[4] = {0.30, 0.27, 0.24, 0.21};
    for (double ci : c) spec.tables.push_back({0.0, ci * 0.5, ci * 0.75});
    return spec;
}
inline Valuation separable4() { return separable_concave(separable4_spec()); }

/// Two-coordinate instance with well-separated one-step gains:
/// tables (0, 0.6) and (0, 0.25), K=2. Range [0, 0.85]; optimum (1,1).
inline SeparableConcaveSpec separable2_wide_spec() {
    return SeparableConcaveSpec{{{0.0, 0.6}, {0.0, 0.25}}, 2};
}
inline Valuation separable2_wide() { return separable_concave(separable2_wide_spec()); }

/// The 0.5-valued matching instance: V={0,1}, W={0,1},
/// w = {00:0.3, 01:0.1, 10:0.2, 11:0.2}.
inline BipartiteFlowSpec oxs2_spec() {
    BipartiteFlowSpec spec;
    spec.left_count = 2;
    spec.right_count = 2;
    spec.edges = {{0, 0, 0.3}, {0, 1, 0.1}, {1, 0, 0.2}, {1, 1, 0.2}};
    spec.source_caps = {1, 1};
    return spec;
}

inline Matroid u23() { return Matroid::uniform(3, 2); }

/// Partition matroid with blocks {0,1},{2} and unit caps;
/// bases {0,2} and {1,2}.
inline Matroid partition12_3() { return Matroid::partition({{0, 1}, {2}}, {1, 1}); }

/// Three matroids on N=5 sharing the common bases {0,2,4} and {1,3,4}.
inline std::array<Matroid, 3> common_base_triple() {
    return {Matroid::partition({{0, 1}, {2, 3}, {4}}, {1, 1, 1}),
            Matroid::partition({{0, 3}, {1, 2}, {4}}, {1, 1, 1}),
            Matroid::uniform(5, 3)};
}

/// Rank-mismatched triple on N=5 with no common base (ranks 1, 5, 3).
inline std::array<Matroid, 3> no_common_base_triple() {
    return {Matroid::uniform(5, 1), Matroid::uniform(5, 5), Matroid::uniform(5, 3)};
}

/// N=6 common-base triple of partition matroids (common base {0,2,4}).
inline std::array<Matroid, 3> common_base_triple6() {
    return {Matroid::partition({{0, 1}, {2, 3}, {4, 5}}, {1, 1, 1}),
            Matroid::partition({{0, 3}, {2, 5}, {1, 4}}, {1, 1, 1}),
            Matroid::partition({{0, 5}, {1, 2}, {3, 4}}, {1, 1, 1})};
}

} // namespace mnat::fixtures
