#include "mnat/mchecker.hpp"

#include <algorithm>

namespace mnat {

namespace {

struct DomScan {
    ValueTable table;
    std::vector<std::size_t> dom; // indices of finite points, lexicographic

    explicit DomScan(const Valuation& f, std::uint64_t cap) : table(f, cap) {
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table.finite_at(i)) dom.push_back(i);
        }
    }
};

} // namespace

ExchangeReport check_exchange(const Valuation& f, double tol, std::uint64_t cap) {
    DomScan scan(f, cap);
    const ValueTable& t = scan.table;
    const std::size_t n = t.ground_size();

    ExchangeReport report;
    for (std::size_t xi : scan.dom) {
        const Point x = t.point_at(xi);
        const double fx = t.value_at(xi);
        for (std::size_t yi : scan.dom) {
            const Point y = t.point_at(yi);
            ++report.pairs_checked;
            const double fxy = fx + t.value_at(yi);
            for (std::size_t c = 0; c < n; ++c) {
                if (x[c] <= y[c]) continue;
                // i = c + 1; both x - e_i and y + e_i stay inside the box.
                const std::size_t xm = xi - t.stride(c);
                const std::size_t yp = yi + t.stride(c);
                bool ok = false;
                // j = 0 candidate.
                if (t.finite_at(xm) && t.finite_at(yp) &&
                    fxy <= t.value_at(xm) + t.value_at(yp) + tol) {
                    ok = true;
                }
                for (std::size_t d = 0; !ok && d < n; ++d) {
                    if (x[d] >= y[d]) continue;
                    const std::size_t xj = xm + t.stride(d);
                    const std::size_t yj = yp - t.stride(d);
                    if (t.finite_at(xj) && t.finite_at(yj) &&
                        fxy <= t.value_at(xj) + t.value_at(yj) + tol) {
                        ok = true;
                    }
                }
                if (!ok) {
                    report.pass = false;
                    report.witness = ExchangeWitness{x, y, c + 1, "exchange"};
                    return report;
                }
            }
        }
    }
    return report;
}

ExchangeReport check_prop_ab(const Valuation& f, double tol, std::uint64_t cap) {
    DomScan scan(f, cap);
    const ValueTable& t = scan.table;
    const std::size_t n = t.ground_size();

    ExchangeReport report;
    for (std::size_t xi : scan.dom) {
        const Point x = t.point_at(xi);
        const double fx = t.value_at(xi);
        for (std::size_t yi : scan.dom) {
            const Point y = t.point_at(yi);
            ++report.pairs_checked;
            const double fxy = fx + t.value_at(yi);
            const int sx = x.total();
            const int sy = y.total();

            // Clause (a): some j with x(j) < y(j) satisfies the swap bound.
            if (sx < sy) {
                bool ok = false;
                for (std::size_t d = 0; !ok && d < n; ++d) {
                    if (x[d] >= y[d]) continue;
                    // x + e_j stays in the box because x(d) < y(d) <= hi(d).
                    const std::size_t xj = xi + t.stride(d);
                    const std::size_t yj = yi - t.stride(d);
                    if (t.finite_at(xj) && t.finite_at(yj) &&
                        fxy <= t.value_at(xj) + t.value_at(yj) + tol) {
                        ok = true;
                    }
                }
                if (!ok) {
                    report.pass = false;
                    report.witness = ExchangeWitness{x, y, 0, "a"};
                    return report;
                }
            }

            // Clause (b): j ranges over V only, no j = 0 escape hatch.
            if (sx <= sy) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (x[c] <= y[c]) continue;
                    const std::size_t xm = xi - t.stride(c);
                    const std::size_t yp = yi + t.stride(c);
                    bool ok = false;
                    for (std::size_t d = 0; !ok && d < n; ++d) {
                        if (x[d] >= y[d]) continue;
                        const std::size_t xj = xm + t.stride(d);
                        const std::size_t yj = yp - t.stride(d);
                        if (t.finite_at(xj) && t.finite_at(yj) &&
                            fxy <= t.value_at(xj) + t.value_at(yj) + tol) {
                            ok = true;
                        }
                    }
                    if (!ok) {
                        report.pass = false;
                        report.witness = ExchangeWitness{x, y, c + 1, "b"};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

LocalError local_error(const Valuation& f, const Point& x, std::size_t direction) {
    assert(f.value(x).is_finite());
    const std::size_t n = f.ground_size();
    assert(direction <= n);

    double best = f.value(x).value(); // i' = 0 is always finite for x in dom f
    for (std::size_t i = 1; i <= n; ++i) {
        const ExtendedValue v = f.value(x.plus_unit(i));
        if (v.is_finite()) best = std::max(best, v.value());
    }
    const ExtendedValue chosen = f.value(x.plus_unit(direction));
    if (!chosen.is_finite()) return LocalError::infinite();
    return LocalError::finite(best - chosen.value());
}

ReachableSet reachable_set(const FeasibleRegion& region, const Point& x_k, int step, int budget,
                           std::uint64_t cap) {
    assert(step >= 0 && step <= budget);
    assert(region.contains(x_k));
    const int sum_cap = budget - step + x_k.total();

    ReachableSet out;
    out.anchor = x_k;
    out.remaining_budget = budget - step;
    for (Point& p : region.enumerate(cap)) {
        if (p.dominates(x_k) && p.total() <= sum_cap) out.points.push_back(std::move(p));
    }
    return out;
}

Maximizer brute_force_max(const Valuation& f, const FeasibleRegion& region, std::uint64_t cap) {
    Maximizer best;
    bool found = false;
    for (const Point& p : region.enumerate(cap)) {
        const ExtendedValue v = f.value(p);
        if (!v.is_finite()) continue;
        if (!found || v.value() > best.value) {
            best.point = p;
            best.value = v.value();
            found = true;
        }
    }
    if (!found) throw Error("brute_force_max: feasible region is empty");
    return best;
}

} // namespace mnat
