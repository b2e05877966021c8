#include "mnat/matroid.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace mnat {

namespace {

constexpr std::size_t kMaxGroundSize = 20;

void check_ground_size(std::size_t n) {
    if (n == 0 || n > kMaxGroundSize) {
        throw Error("matroid ground set size must be in [1, " + std::to_string(kMaxGroundSize) +
                    "], got " + std::to_string(n));
    }
}

// Emits every mask with `r` bits chosen from the bit positions in `pool`.
void emit_combinations(const std::vector<std::size_t>& pool, std::size_t r, std::size_t from,
                       std::uint32_t acc, std::vector<std::uint32_t>& out) {
    if (r == 0) {
        out.push_back(acc);
        return;
    }
    for (std::size_t i = from; i + r <= pool.size(); ++i) {
        emit_combinations(pool, r - 1, i + 1, acc | (std::uint32_t{1} << pool[i]), out);
    }
}

void verify_exchange_axiom(std::size_t n, const std::vector<std::uint32_t>& bases) {
    // Exhaustive check; quadratic in the base count, so gated on n.
    if (n > 12) return;
    auto is_member = [&bases](std::uint32_t m) {
        return std::binary_search(bases.begin(), bases.end(), m);
    };
    for (std::uint32_t b1 : bases) {
        for (std::uint32_t b2 : bases) {
            std::uint32_t out_bits = b1 & ~b2;
            while (out_bits != 0) {
                const std::uint32_t i_bit = out_bits & (~out_bits + 1);
                out_bits ^= i_bit;
                bool found = false;
                std::uint32_t in_bits = b2 & ~b1;
                while (in_bits != 0) {
                    const std::uint32_t j_bit = in_bits & (~in_bits + 1);
                    in_bits ^= j_bit;
                    if (is_member((b1 ^ i_bit) | j_bit)) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    throw ExchangeAxiomViolation("base-exchange axiom fails for bases " +
                                                 std::to_string(b1) + " and " + std::to_string(b2));
                }
            }
        }
    }
}

} // namespace

Matroid::Matroid(std::size_t n, std::vector<std::uint32_t> bases)
    : n_(n), bases_(std::move(bases)) {
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    if (bases_.empty()) {
        throw Error("matroid base family must be non-empty");
    }
    if (bases_.size() > kBaseListCap) {
        throw BaseEnumerationCapExceeded("base family has " + std::to_string(bases_.size()) +
                                         " members; cap is " + std::to_string(kBaseListCap));
    }
    rank_ = static_cast<std::size_t>(std::popcount(bases_.front()));
    for (std::uint32_t b : bases_) {
        if (static_cast<std::size_t>(std::popcount(b)) != rank_) {
            // Equicardinality is a consequence of the exchange axiom; failing
            // it gives a clearer error than the axiom scan would.
            throw ExchangeAxiomViolation("matroid bases must be equicardinal");
        }
    }
}

Matroid Matroid::uniform(std::size_t n, std::size_t r) {
    check_ground_size(n);
    if (r > n) throw Error("uniform matroid requires r <= n");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::uint32_t> bases;
    emit_combinations(pool, r, 0, 0, bases);
    return Matroid(n, std::move(bases));
}

Matroid Matroid::partition(const std::vector<std::vector<std::size_t>>& blocks,
                           const std::vector<std::size_t>& caps) {
    if (blocks.empty() || blocks.size() != caps.size()) {
        throw Error("partition matroid needs one cap per block");
    }
    std::uint32_t seen = 0;
    std::size_t n = 0;
    for (const auto& block : blocks) {
        if (block.empty()) throw Error("partition matroid blocks must be non-empty");
        for (std::size_t e : block) {
            check_ground_size(e + 1);
            if (seen & (std::uint32_t{1} << e)) {
                throw Error("partition matroid blocks must be disjoint");
            }
            seen |= std::uint32_t{1} << e;
            n = std::max(n, e + 1);
        }
    }
    if (std::popcount(seen) != static_cast<int>(n)) {
        throw Error("partition matroid blocks must cover the ground set {0..n-1}");
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (caps[b] > blocks[b].size()) {
            throw Error("partition matroid caps must not exceed block sizes");
        }
    }

    // Cross product of per-block combinations.
    std::vector<std::uint32_t> bases{0};
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::vector<std::uint32_t> block_choices;
        emit_combinations(blocks[b], caps[b], 0, 0, block_choices);
        std::vector<std::uint32_t> next;
        next.reserve(bases.size() * block_choices.size());
        if (bases.size() * block_choices.size() > kBaseListCap) {
            throw BaseEnumerationCapExceeded("partition matroid base family exceeds cap");
        }
        for (std::uint32_t acc : bases) {
            for (std::uint32_t c : block_choices) next.push_back(acc | c);
        }
        bases = std::move(next);
    }
    return Matroid(n, std::move(bases));
}

Matroid Matroid::from_bases(std::size_t n, const std::vector<std::vector<std::size_t>>& bases) {
    check_ground_size(n);
    std::vector<std::uint32_t> masks;
    masks.reserve(bases.size());
    for (const auto& base : bases) {
        std::uint32_t m = 0;
        for (std::size_t e : base) {
            if (e >= n) throw Error("base element out of range");
            m |= std::uint32_t{1} << e;
        }
        masks.push_back(m);
    }
    Matroid matroid(n, std::move(masks));
    verify_exchange_axiom(n, matroid.bases_);
    return matroid;
}

bool Matroid::is_base(std::uint32_t mask) const {
    return std::binary_search(bases_.begin(), bases_.end(), mask);
}

bool Matroid::is_base(const Point& x) const { return is_base(mask_of(x)); }

std::vector<std::vector<std::size_t>> Matroid::bases_as_sets() const {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(bases_.size());
    for (std::uint32_t mask : bases_) {
        std::vector<std::size_t> set;
        for (std::size_t i = 0; i < n_; ++i) {
            if (mask & (std::uint32_t{1} << i)) set.push_back(i);
        }
        out.push_back(std::move(set));
    }
    return out;
}

std::uint32_t Matroid::mask_of(const Point& x) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0 && x[i] != 1) {
            throw Error("expected a 0/1 point for matroid operations");
        }
        if (x[i] == 1) m |= std::uint32_t{1} << i;
    }
    return m;
}

Point Matroid::point_of(std::uint32_t mask, std::size_t n) {
    std::vector<int> coords(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint32_t{1} << i)) coords[i] = 1;
    }
    return Point(std::move(coords));
}

} // namespace mnat
