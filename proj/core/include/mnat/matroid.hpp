#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "mnat/errors.hpp"
#include "mnat/lattice.hpp"

namespace mnat {

/// Cap on explicit base lists; tau and matroid_distance scan the full list.
inline constexpr std::size_t kBaseListCap = 100'000;

/// A matroid over ground set {0, ..., n-1}, held as an explicit base
/// family plus a membership oracle. Bases are bitmask-encoded; the
/// explicit list is mandatory so that distance computations and sampling
/// can scan it directly.
///
/// Exchange axiom: for bases B1, B2 and i in B1 \ B2 there is
/// j in B2 \ B1 with B1 - i + j a base. Explicit lists with n <= 12 are
/// verified exhaustively at construction; uniform and partition matroids
/// satisfy the axiom by construction.
class Matroid {
public:
    /// All r-subsets of an n-element ground set.
    static Matroid uniform(std::size_t n, std::size_t r);

    /// Bases pick exactly caps[b] elements from each block; blocks must
    /// partition the ground set.
    static Matroid partition(const std::vector<std::vector<std::size_t>>& blocks,
                             const std::vector<std::size_t>& caps);

    /// Explicit base family; throws ExchangeAxiomViolation on bad lists.
    static Matroid from_bases(std::size_t n, const std::vector<std::vector<std::size_t>>& bases);

    std::size_t ground_size() const { return n_; }
    std::size_t rank() const { return rank_; }

    bool is_base(std::uint32_t mask) const;
    bool is_base(const Point& x) const; // x must lie in {0,1}^V

    const std::vector<std::uint32_t>& base_masks() const { return bases_; }
    std::vector<std::vector<std::size_t>> bases_as_sets() const;

    static std::uint32_t mask_of(const Point& x);
    static Point point_of(std::uint32_t mask, std::size_t n);

private:
    Matroid(std::size_t n, std::vector<std::uint32_t> bases);

    std::size_t n_ = 0;
    std::size_t rank_ = 0;
    std::vector<std::uint32_t> bases_; // sorted, unique
};

} // namespace mnat
