#pragma once

// Independent brute-force oracles used to freeze expected test values.
// These deliberately avoid the library's own solver paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mnat/lattice.hpp"
#include "mnat/random.hpp"
#include "mnat/valuations.hpp"

namespace mnat::oracles {

/// Max-weight assignment by scanning all 2^|E| edge subsets subject to
/// per-left multiplicity x_i and per-right multiplicity 1.
inline double oxs_subset_scan(const BipartiteFlowSpec& spec, const Point& x) {
    const std::size_t m = spec.edges.size();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<int> left_used(spec.left_count, 0);
        std::vector<int> right_used(spec.right_count, 0);
        double w = 0.0;
        bool ok = true;
        for (std::size_t e = 0; e < m && ok; ++e) {
            if (!(mask & (std::uint64_t{1} << e))) continue;
            const auto& edge = spec.edges[e];
            if (++left_used[edge.left] > x[edge.left]) ok = false;
            if (++right_used[edge.right] > 1) ok = false;
            w += edge.weight;
        }
        if (ok) best = std::max(best, w);
    }
    return best;
}

/// Random small bipartite instance with weights in [0, 1].
inline BipartiteFlowSpec random_oxs_spec(std::size_t left, std::size_t right, int cap,
                                         RandomStream& rng) {
    BipartiteFlowSpec spec;
    spec.left_count = left;
    spec.right_count = right;
    spec.source_caps.assign(left, cap);
    for (std::size_t i = 0; i < left; ++i) {
        for (std::size_t j = 0; j < right; ++j) {
            if (rng.uniform01() < 0.7) {
                spec.edges.push_back({i, j, rng.uniform01()});
            }
        }
    }
    return spec;
}

/// Unnormalized sample standard deviation helper for CLT-style checks.
inline double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

} // namespace mnat::oracles
