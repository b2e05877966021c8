#include "mnat/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "mnat/greedy.hpp"
#include "mnat/mchecker.hpp"

namespace mnat {

std::string NoiseSpec::to_string() const {
    if (kind == Kind::uniform_pm1) return "uniform";
    std::string s = std::to_string(sigma);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return "gaussian:" + s;
}

NoiseSpec parse_noise(const std::string& text) {
    if (text == "uniform") return NoiseSpec::bounded_uniform();
    if (text == "gaussian") return NoiseSpec::gaussian(1.0);
    const std::string prefix = "gaussian:";
    if (text.rfind(prefix, 0) == 0) {
        const double sigma = std::stod(text.substr(prefix.size()));
        if (sigma < 0.0) throw Error("noise sigma must be non-negative");
        return NoiseSpec::gaussian(sigma);
    }
    throw Error("unknown noise spec '" + text + "' (expected gaussian[:sigma] or uniform)");
}

double NoisyOracle::query(const Point& x) {
    const ExtendedValue v = truth_.value(x);
    if (!v.is_finite()) {
        throw QueryOutsideDomain("noisy oracle queried outside dom f");
    }
    if (v.value() < -kCheckTolerance || v.value() > 1.0 + kCheckTolerance) {
        throw RangeViolation("truth value " + std::to_string(v.value()) +
                             " lies outside [0, 1]; rescale the valuation first");
    }
    ++queries_;
    return v.value() + noise_.draw(stream_);
}

namespace {

double log_plus(double x) { return std::log(std::max(1.0, x)); }

} // namespace

PullHistory moss_run(const std::vector<ArmOracle>& arms, std::uint64_t rounds) {
    const std::size_t m = arms.size();
    if (m == 0) throw Error("moss_run needs at least one arm");
    if (rounds < m) {
        throw BudgetTooSmall("moss_run: budget " + std::to_string(rounds) + " < arm count " +
                             std::to_string(m));
    }

    PullHistory h;
    h.pulls.assign(m, 0);
    h.means.assign(m, 0.0);

    auto pull = [&](std::size_t i) {
        const double reward = arms[i]();
        ++h.pulls[i];
        h.means[i] += (reward - h.means[i]) / static_cast<double>(h.pulls[i]);
        ++h.rounds;
    };

    for (std::size_t i = 0; i < m; ++i) pull(i);
    const double t_prime = static_cast<double>(rounds);
    for (std::uint64_t t = m; t < rounds; ++t) {
        std::size_t best = 0;
        double best_index = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double tau_i = static_cast<double>(h.pulls[i]);
            const double bonus =
                std::sqrt((4.0 / tau_i) * log_plus(t_prime / (static_cast<double>(m) * tau_i)));
            const double index = h.means[i] + bonus;
            if (index > best_index) {
                best_index = index;
                best = i;
            }
        }
        pull(best);
    }
    return h;
}

std::size_t moss_recommend(const PullHistory& history, RandomStream& stream) {
    assert(history.rounds > 0);
    const double u = stream.uniform01() * static_cast<double>(history.rounds);
    double acc = 0.0;
    for (std::size_t i = 0; i < history.pulls.size(); ++i) {
        acc += static_cast<double>(history.pulls[i]);
        if (u < acc) return i;
    }
    return history.pulls.size() - 1;
}

GreedyBanditResult greedy_bandit(NoisyOracle& oracle, const FeasibleRegion& region, int budget_k,
                                 std::uint64_t rounds, RandomStream& select_stream) {
    const std::size_t n = region.ground_size();
    if (budget_k <= 0) throw Error("greedy_bandit needs a positive budget");
    const std::uint64_t min_rounds = static_cast<std::uint64_t>(budget_k) * (n + 2);
    if (rounds < min_rounds) {
        throw BudgetTooSmall("greedy_bandit: rounds " + std::to_string(rounds) +
                             " < K(N+2) = " + std::to_string(min_rounds));
    }

    const std::uint64_t phase_rounds = rounds / static_cast<std::uint64_t>(budget_k);
    GreedyBanditResult result;
    Point x = Point::zeros(n);
    for (int k = 1; k <= budget_k; ++k) {
        const std::vector<std::size_t> dirs = feasible_directions(region, x);
        std::vector<ArmOracle> arms;
        arms.reserve(dirs.size());
        std::vector<Point> arm_points;
        arm_points.reserve(dirs.size());
        for (std::size_t dir : dirs) arm_points.push_back(x.plus_unit(dir));
        for (std::size_t a = 0; a < dirs.size(); ++a) {
            arms.push_back([&oracle, &result, &arm_points, a]() {
                result.queried.push_back(arm_points[a]);
                return oracle.query(arm_points[a]);
            });
        }
        const PullHistory history = moss_run(arms, phase_rounds);
        const std::size_t chosen_arm = moss_recommend(history, select_stream);
        const std::size_t dir = dirs[chosen_arm];
        result.directions.push_back(dir);
        x = x.plus_unit(dir);
    }
    result.chosen = x;
    return result;
}

double RegretRecord::cumulative_regret() const {
    double played_sum = 0.0;
    for (double v : true_values) played_sum += v;
    return static_cast<double>(true_values.size()) * optimum_value - played_sum;
}

RegretRecord etc_run(NoisyOracle& oracle, const FeasibleRegion& region, int budget_k,
                     std::uint64_t rounds, RandomStream& select_stream) {
    const std::size_t n = region.ground_size();
    const std::uint64_t min_rounds = static_cast<std::uint64_t>(budget_k) * (n + 2);
    if (rounds < min_rounds) {
        throw BudgetTooSmall("etc_run: rounds " + std::to_string(rounds) +
                             " < K(N+2) = " + std::to_string(min_rounds));
    }

    // T~ = min(T, max(K(N+2), ceil(K * N^(1/3) * T^(2/3)))); constant 1.
    const double k_d = static_cast<double>(budget_k);
    const double t_d = static_cast<double>(rounds);
    const double raw = k_d * std::cbrt(static_cast<double>(n)) * std::pow(t_d, 2.0 / 3.0);
    std::uint64_t explore = static_cast<std::uint64_t>(std::ceil(raw));
    explore = std::max(explore, min_rounds);
    explore = std::min(explore, rounds);

    RegretRecord record;
    record.seed = oracle.seed();
    const Maximizer opt = brute_force_max(oracle.truth(), region);
    record.optimum = opt.point;
    record.optimum_value = opt.value;

    const GreedyBanditResult explored =
        greedy_bandit(oracle, region, budget_k, explore, select_stream);
    record.committed = explored.chosen;
    record.explore_rounds = explored.queried.size();

    record.played = explored.queried;
    record.played.reserve(rounds);
    // Leftover exploration budget (T~ - K*floor(T~/K)) is spent on the
    // committed point as well.
    while (record.played.size() < rounds) record.played.push_back(explored.chosen);

    record.true_values.reserve(rounds);
    for (const Point& p : record.played) {
        record.true_values.push_back(oracle.truth().value(p).value());
    }
    return record;
}

namespace {

struct TrialData {
    TrialResult result;
    std::vector<Point> played;
    std::vector<double> true_values;
};

TrialData run_trial(const ExperimentConfig& config, double optimum_value, std::uint64_t trial,
                    bool keep_rows) {
    NoisyOracle oracle(config.truth, config.noise,
                       RandomStream::derive(config.master_seed, {trial, 0}).next_u64());
    RandomStream select = RandomStream::derive(config.master_seed, {trial, 1});
    FeasibleRegion region(config.truth, config.budget_k);

    TrialData data;
    data.result.trial = trial;
    if (config.mode == RegretMode::simple) {
        const GreedyBanditResult run =
            greedy_bandit(oracle, region, config.budget_k, config.rounds, select);
        data.result.final_point = run.chosen;
        data.result.regret = optimum_value - config.truth.value(run.chosen).value();
        if (keep_rows) {
            data.played = run.queried;
            data.true_values.reserve(data.played.size());
            for (const Point& p : data.played) {
                data.true_values.push_back(config.truth.value(p).value());
            }
        }
    } else {
        RegretRecord record = etc_run(oracle, region, config.budget_k, config.rounds, select);
        data.result.final_point = record.committed;
        data.result.regret = record.cumulative_regret();
        if (keep_rows) {
            data.played = std::move(record.played);
            data.true_values = std::move(record.true_values);
        }
    }
    return data;
}

} // namespace

RegretSummary estimate_regret(const ExperimentConfig& config, const TraceSink* sink) {
    if (config.trials == 0) throw Error("estimate_regret needs at least one trial");

    RegretSummary summary;
    const Maximizer opt = brute_force_max(config.truth, FeasibleRegion(config.truth, config.budget_k));
    summary.optimum = opt.point;
    summary.optimum_value = opt.value;

    unsigned threads = config.max_threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    // Trials run in batches; per-round rows are only buffered for one batch
    // at a time and drained in trial order by this (collector) thread.
    std::uint64_t batch = config.trials;
    if (sink != nullptr && config.rounds > 0) {
        batch = std::max<std::uint64_t>(1, 4'000'000 / config.rounds);
    }

    const bool keep_rows = sink != nullptr;
    for (std::uint64_t first = 1; first <= config.trials; first += batch) {
        const std::uint64_t last = std::min(config.trials, first + batch - 1);
        std::vector<TrialData> results(last - first + 1);
        const std::uint64_t count = last - first + 1;
        const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
        if (workers <= 1) {
            for (std::uint64_t t = 0; t < count; ++t) {
                results[t] = run_trial(config, opt.value, first + t, keep_rows);
            }
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w]() {
                    for (std::uint64_t t = w; t < count; t += workers) {
                        results[t] = run_trial(config, opt.value, first + t, keep_rows);
                    }
                });
            }
            for (auto& th : pool) th.join();
        }
        for (TrialData& data : results) {
            if (sink != nullptr) {
                double regret_so_far = 0.0;
                for (std::size_t r = 0; r < data.played.size(); ++r) {
                    regret_so_far += opt.value - data.true_values[r];
                    (*sink)(data.result.trial, r + 1, data.played[r], data.true_values[r],
                            regret_so_far);
                }
            }
            summary.per_trial.push_back(std::move(data.result));
        }
    }

    double mean = 0.0;
    for (const TrialResult& t : summary.per_trial) mean += t.regret;
    mean /= static_cast<double>(summary.per_trial.size());
    double var = 0.0;
    for (const TrialResult& t : summary.per_trial) {
        var += (t.regret - mean) * (t.regret - mean);
    }
    const std::size_t n_trials = summary.per_trial.size();
    summary.mean_regret = mean;
    summary.std_error =
        n_trials > 1 ? std::sqrt(var / static_cast<double>(n_trials - 1) /
                                 static_cast<double>(n_trials))
                     : 0.0;
    return summary;
}

} // namespace mnat
