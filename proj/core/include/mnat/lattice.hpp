#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mnat/errors.hpp"

namespace mnat {

/// Default cap on brute-force enumerations (number of lattice points).
inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

/// Tolerance used by all floating-point inequality checks.
inline constexpr double kCheckTolerance = 1e-9;

/// An integer lattice point over the ground set V = {1, ..., N}.
/// Coordinates are immutable after construction. Directions follow the
/// V-union-{0} convention: direction 0 is the no-op step, direction i in
/// [1, N] addresses coordinate i-1.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<int> coords) : coords_(std::move(coords)) {}

    static Point zeros(std::size_t n) { return Point(std::vector<int>(n, 0)); }

    std::size_t size() const { return coords_.size(); }
    int operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<int>& coords() const { return coords_; }

    /// x(V), the coordinate sum.
    int total() const {
        int s = 0;
        for (int c : coords_) s += c;
        return s;
    }

    /// Element-wise x >= other.
    bool dominates(const Point& other) const {
        assert(size() == other.size());
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] < other.coords_[i]) return false;
        }
        return true;
    }

    /// x + e_dir; dir == 0 returns x unchanged.
    Point plus_unit(std::size_t dir) const {
        Point p = *this;
        if (dir != 0) {
            assert(dir <= p.coords_.size());
            ++p.coords_[dir - 1];
        }
        return p;
    }

    /// x - e_dir; dir == 0 returns x unchanged.
    Point minus_unit(std::size_t dir) const {
        Point p = *this;
        if (dir != 0) {
            assert(dir <= p.coords_.size());
            --p.coords_[dir - 1];
        }
        return p;
    }

    bool operator==(const Point&) const = default;
    /// Lexicographic order with coordinate 0 most significant.
    auto operator<=>(const Point& other) const { return coords_ <=> other.coords_; }

private:
    std::vector<int> coords_;
};

/// A finite real or the distinguished value -infinity. The sentinel is a
/// tag, not a floating-point infinity, so domain tests stay exact; it
/// only flows through comparisons, never through arithmetic.
class ExtendedValue {
public:
    constexpr ExtendedValue() : finite_(false), v_(0.0) {}
    constexpr ExtendedValue(double v) : finite_(true), v_(v) {}

    static constexpr ExtendedValue neg_infinity() { return ExtendedValue(); }

    constexpr bool is_finite() const { return finite_; }

    constexpr double value() const {
        assert(finite_);
        return v_;
    }

    friend constexpr bool operator==(ExtendedValue a, ExtendedValue b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend constexpr bool operator<(ExtendedValue a, ExtendedValue b) {
        if (!a.finite_) return b.finite_; // -inf < finite, not < -inf
        if (!b.finite_) return false;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator>(ExtendedValue a, ExtendedValue b) { return b < a; }
    friend constexpr bool operator<=(ExtendedValue a, ExtendedValue b) { return !(b < a); }
    friend constexpr bool operator>=(ExtendedValue a, ExtendedValue b) { return !(a < b); }

private:
    bool finite_;
    double v_;
};

/// Value oracle f: Z^V -> R u {-inf} carrying its domain box [0, hi].
/// The box is mandatory metadata so brute-force enumerations terminate;
/// everything outside it evaluates to -infinity. Oracles must be pure.
class Valuation {
public:
    using Oracle = std::function<ExtendedValue(const Point&)>;

    Valuation(std::string name, Point box_hi, Oracle oracle)
        : name_(std::move(name)), box_hi_(std::move(box_hi)), oracle_(std::move(oracle)) {}

    const std::string& name() const { return name_; }
    std::size_t ground_size() const { return box_hi_.size(); }
    const Point& box_hi() const { return box_hi_; }

    /// Number of lattice points in [0, hi]; saturates at uint64 max.
    std::uint64_t box_volume() const {
        std::uint64_t v = 1;
        for (std::size_t i = 0; i < box_hi_.size(); ++i) {
            const std::uint64_t side = static_cast<std::uint64_t>(box_hi_[i]) + 1;
            if (v > std::numeric_limits<std::uint64_t>::max() / side) {
                return std::numeric_limits<std::uint64_t>::max();
            }
            v *= side;
        }
        return v;
    }

    bool in_box(const Point& x) const {
        if (x.size() != box_hi_.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < 0 || x[i] > box_hi_[i]) return false;
        }
        return true;
    }

    ExtendedValue value(const Point& x) const {
        if (!in_box(x)) return ExtendedValue::neg_infinity();
        return oracle_(x);
    }

    /// Declared affine rescale applied to this valuation (identity by default).
    double rescale_factor() const { return rescale_factor_; }
    double rescale_offset() const { return rescale_offset_; }

private:
    friend Valuation rescaled(const Valuation&, double, double);

    std::string name_;
    Point box_hi_;
    Oracle oracle_;
    double rescale_factor_ = 1.0;
    double rescale_offset_ = 0.0;
};

/// The action set X = {x in dom f : x(V) <= K}.
class FeasibleRegion {
public:
    FeasibleRegion(Valuation valuation, int budget)
        : valuation_(std::move(valuation)), budget_(budget) {
        assert(budget >= 0);
    }

    const Valuation& valuation() const { return valuation_; }
    int budget() const { return budget_; }
    std::size_t ground_size() const { return valuation_.ground_size(); }

    bool contains(const Point& x) const {
        return valuation_.value(x).is_finite() && x.total() <= budget_;
    }

    /// All feasible points in lexicographic order. Throws CapExceeded when
    /// the domain box holds more than `cap` points (use sampling instead).
    std::vector<Point> enumerate(std::uint64_t cap = kEnumerationCap) const;

private:
    Valuation valuation_;
    int budget_;
};

/// Dense cache of a valuation over its box, with mixed-radix indexing.
/// Index order equals lexicographic point order.
class ValueTable {
public:
    explicit ValueTable(const Valuation& f, std::uint64_t cap = kEnumerationCap);

    std::size_t size() const { return finite_.size(); }
    std::size_t ground_size() const { return box_hi_.size(); }
    const Point& box_hi() const { return box_hi_; }

    bool finite_at(std::size_t idx) const { return finite_[idx] != 0; }
    double value_at(std::size_t idx) const { return values_[idx]; }
    ExtendedValue value(std::size_t idx) const {
        return finite_[idx] ? ExtendedValue(values_[idx]) : ExtendedValue::neg_infinity();
    }

    /// Stride of coordinate c (direction c+1) in the flat index.
    std::size_t stride(std::size_t c) const { return strides_[c]; }

    std::size_t index_of(const Point& x) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < strides_.size(); ++i) idx += strides_[i] * static_cast<std::size_t>(x[i]);
        return idx;
    }

    Point point_at(std::size_t idx) const {
        std::vector<int> c(box_hi_.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = static_cast<int>(idx / strides_[i]);
            idx %= strides_[i];
        }
        return Point(std::move(c));
    }

private:
    Point box_hi_;
    std::vector<std::size_t> strides_;
    std::vector<double> values_;
    std::vector<char> finite_;
};

/// Restriction of f to the integer interval [a, b]: equal to f inside,
/// -infinity outside. Preserves the exchange property of the original.
/// Throws EmptyIntersection when [a, b] misses the domain box.
Valuation restrict_to_interval(const Valuation& f, const Point& a, const Point& b);

/// Affine rescale of f onto [0, 1] by a declared range [lo, hi]; the scale
/// is recorded on the returned valuation. hi must exceed lo.
Valuation rescaled(const Valuation& f, double lo, double hi);

/// Table-backed copy of f; evaluation becomes an O(N) index computation.
Valuation memoized(const Valuation& f, std::uint64_t cap = kEnumerationCap);

} // namespace mnat
