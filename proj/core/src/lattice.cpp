#include "mnat/lattice.hpp"

#include <algorithm>
#include <memory>

namespace mnat {

namespace {

// Advances mixed-radix coords in lexicographic order; false when exhausted.
bool advance(std::vector<int>& coords, const Point& hi) {
    for (std::size_t i = coords.size(); i-- > 0;) {
        if (coords[i] < hi[static_cast<std::size_t>(i)]) {
            ++coords[i];
            std::fill(coords.begin() + static_cast<std::ptrdiff_t>(i) + 1, coords.end(), 0);
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<Point> FeasibleRegion::enumerate(std::uint64_t cap) const {
    if (valuation_.box_volume() > cap) {
        throw CapExceeded("feasible-region enumeration: domain box exceeds cap of " +
                          std::to_string(cap) + " points");
    }
    std::vector<Point> out;
    std::vector<int> coords(valuation_.ground_size(), 0);
    do {
        Point p{coords};
        if (contains(p)) out.push_back(std::move(p));
    } while (advance(coords, valuation_.box_hi()));
    return out;
}

ValueTable::ValueTable(const Valuation& f, std::uint64_t cap) : box_hi_(f.box_hi()) {
    const std::uint64_t volume = f.box_volume();
    if (volume > cap) {
        throw CapExceeded("value table: domain box exceeds cap of " + std::to_string(cap) +
                          " points");
    }
    const std::size_t n = box_hi_.size();
    strides_.assign(n, 1);
    for (std::size_t i = n; i-- > 1;) {
        strides_[i - 1] = strides_[i] * (static_cast<std::size_t>(box_hi_[i]) + 1);
    }
    values_.assign(static_cast<std::size_t>(volume), 0.0);
    finite_.assign(static_cast<std::size_t>(volume), 0);

    std::vector<int> coords(n, 0);
    std::size_t idx = 0;
    do {
        const ExtendedValue v = f.value(Point{coords});
        if (v.is_finite()) {
            values_[idx] = v.value();
            finite_[idx] = 1;
        }
        ++idx;
    } while (advance(coords, box_hi_));
}

Valuation restrict_to_interval(const Valuation& f, const Point& a, const Point& b) {
    const std::size_t n = f.ground_size();
    assert(a.size() == n && b.size() == n);
    Point hi = f.box_hi();
    for (std::size_t i = 0; i < n; ++i) {
        const int lo_i = std::max(a[i], 0);
        const int hi_i = std::min(b[i], hi[i]);
        if (lo_i > hi_i) {
            throw EmptyIntersection("restriction [a, b] does not meet the domain box");
        }
    }
    std::vector<int> new_hi(n);
    for (std::size_t i = 0; i < n; ++i) new_hi[i] = std::min(b[i], hi[i]);

    auto base = std::make_shared<Valuation>(f);
    Point lo = a;
    return Valuation(f.name() + "|[a,b]", Point(std::move(new_hi)),
                     [base, lo](const Point& x) -> ExtendedValue {
                         for (std::size_t i = 0; i < x.size(); ++i) {
                             if (x[i] < lo[i]) return ExtendedValue::neg_infinity();
                         }
                         return base->value(x);
                     });
}

Valuation rescaled(const Valuation& f, double lo, double hi) {
    assert(hi > lo);
    auto base = std::make_shared<Valuation>(f);
    const double factor = 1.0 / (hi - lo);
    Valuation out(f.name() + "|rescaled", f.box_hi(),
                  [base, lo, factor](const Point& x) -> ExtendedValue {
                      const ExtendedValue v = base->value(x);
                      if (!v.is_finite()) return v;
                      return ExtendedValue((v.value() - lo) * factor);
                  });
    out.rescale_factor_ = factor;
    out.rescale_offset_ = -lo * factor;
    return out;
}

Valuation memoized(const Valuation& f, std::uint64_t cap) {
    auto table = std::make_shared<ValueTable>(f, cap);
    return Valuation(f.name(), f.box_hi(), [table](const Point& x) -> ExtendedValue {
        return table->value(table->index_of(x));
    });
}

} // namespace mnat
