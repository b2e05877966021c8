#include "mnat/greedy.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <string>

namespace mnat {

double Trajectory::error_sum() const {
    double s = 0.0;
    for (const LocalError& e : step_errors) {
        assert(!e.is_infinite());
        s += e.value();
    }
    return s;
}

std::vector<std::size_t> feasible_directions(const FeasibleRegion& region, const Point& x) {
    std::vector<std::size_t> dirs{0};
    for (std::size_t i = 1; i <= region.ground_size(); ++i) {
        if (region.contains(x.plus_unit(i))) dirs.push_back(i);
    }
    return dirs;
}

std::size_t exact_greedy_direction(const Valuation& f, const FeasibleRegion& region,
                                   const Point& x) {
    std::size_t best_dir = 0;
    double best = f.value(x).value(); // direction 0
    for (std::size_t i = 1; i <= region.ground_size(); ++i) {
        const Point stepped = x.plus_unit(i);
        if (!region.contains(stepped)) continue;
        const double v = f.value(stepped).value();
        if (v > best) {
            best = v;
            best_dir = i;
        }
    }
    return best_dir;
}

namespace {

Trajectory run_procedure(const Valuation& f, int budget, const Selector& select,
                         bool validate) {
    if (!f.value(Point::zeros(f.ground_size())).is_finite()) {
        throw Error("greedy requires 0 in dom f");
    }
    FeasibleRegion region(f, budget);
    Trajectory traj;
    traj.points.push_back(Point::zeros(f.ground_size()));
    for (int k = 1; k <= budget; ++k) {
        const Point& x = traj.points.back();
        const std::size_t dir = select(static_cast<std::size_t>(k), x);
        if (validate) {
            if (dir > f.ground_size() || !region.contains(x.plus_unit(dir))) {
                throw InfeasibleDirection("selector chose direction " + std::to_string(dir) +
                                          " leaving the feasible region at step " +
                                          std::to_string(k));
            }
        }
        traj.step_errors.push_back(local_error(f, x, dir));
        traj.directions.push_back(dir);
        traj.points.push_back(x.plus_unit(dir));
    }
    return traj;
}

} // namespace

Trajectory greedy_exact(const Valuation& f, int budget) {
    FeasibleRegion region(f, budget);
    return run_procedure(
        f, budget,
        [&f, &region](std::size_t, const Point& x) {
            return exact_greedy_direction(f, region, x);
        },
        /*validate=*/false);
}

Trajectory greedy_with_selector(const Valuation& f, int budget, const Selector& select) {
    return run_procedure(f, budget, select, /*validate=*/true);
}

Selector zero_selector() {
    return [](std::size_t, const Point&) -> std::size_t { return 0; };
}

Selector worst_feasible_selector(Valuation f, int budget) {
    auto shared = std::make_shared<Valuation>(std::move(f));
    auto region = std::make_shared<FeasibleRegion>(*shared, budget);
    return [shared, region](std::size_t, const Point& x) -> std::size_t {
        std::size_t worst_dir = 0;
        double worst = shared->value(x).value();
        for (std::size_t i = 1; i <= shared->ground_size(); ++i) {
            const Point stepped = x.plus_unit(i);
            if (!region->contains(stepped)) continue;
            const double v = shared->value(stepped).value();
            if (v < worst) {
                worst = v;
                worst_dir = i;
            }
        }
        return worst_dir;
    };
}

Selector random_feasible_selector(Valuation f, int budget, std::uint64_t seed) {
    auto region = std::make_shared<FeasibleRegion>(std::move(f), budget);
    auto stream = std::make_shared<RandomStream>(seed);
    return [region, stream](std::size_t, const Point& x) -> std::size_t {
        const std::vector<std::size_t> dirs = feasible_directions(*region, x);
        return dirs[stream->uniform_below(dirs.size())];
    };
}

bool RobustnessAudit::passed(double tol) const {
    if (vacuous) return true; // the guarantee is vacuously true
    if (slack < -tol) return false;
    for (double s : step_slacks) {
        if (s < -tol) return false;
    }
    return true;
}

RobustnessAudit audit_robustness(const Valuation& f, const Trajectory& traj,
                                 const FeasibleRegion& region, std::uint64_t cap) {
    RobustnessAudit audit;
    audit.final_value = f.value(traj.final_point()).value();
    const Maximizer opt = brute_force_max(f, region, cap);
    audit.optimal_value = opt.value;
    audit.optimum = opt.point;
    audit.vacuous = traj.has_infinite_error();

    const int budget = region.budget();
    const auto feasible = region.enumerate(cap);
    auto max_over = [&](const Point& anchor, int step) {
        const int sum_cap = budget - step + anchor.total();
        double best = -std::numeric_limits<double>::infinity();
        for (const Point& y : feasible) {
            if (!y.dominates(anchor) || y.total() > sum_cap) continue;
            best = std::max(best, f.value(y).value());
        }
        return best;
    };

    double prev_max = max_over(traj.points[0], 0);
    for (std::size_t k = 1; k < traj.points.size(); ++k) {
        const double cur_max = max_over(traj.points[k], static_cast<int>(k));
        const LocalError& err = traj.step_errors[k - 1];
        if (err.is_infinite()) {
            audit.step_slacks.push_back(std::numeric_limits<double>::infinity());
        } else {
            audit.step_slacks.push_back(cur_max - prev_max + err.value());
        }
        prev_max = cur_max;
    }

    if (!audit.vacuous) {
        audit.error_sum = traj.error_sum();
        audit.slack = audit.final_value - (audit.optimal_value - audit.error_sum);
    } else {
        audit.error_sum = std::numeric_limits<double>::infinity();
        audit.slack = std::numeric_limits<double>::infinity();
    }
    return audit;
}

} // namespace mnat
