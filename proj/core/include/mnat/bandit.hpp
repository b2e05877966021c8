#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mnat/lattice.hpp"
#include "mnat/random.hpp"

namespace mnat {

/// Additive query noise. Both families are zero-mean and 1-sub-Gaussian
/// (gaussian at sigma <= 1; any zero-mean variable bounded in [-1, 1]).
struct NoiseSpec {
    enum class Kind { gaussian, uniform_pm1 };
    Kind kind = Kind::gaussian;
    double sigma = 1.0; // gaussian only

    static NoiseSpec gaussian(double sigma = 1.0) { return {Kind::gaussian, sigma}; }
    static NoiseSpec bounded_uniform() { return {Kind::uniform_pm1, 0.0}; }

    double draw(RandomStream& stream) const {
        return kind == Kind::gaussian ? stream.gaussian(sigma) : stream.uniform_pm1();
    }
    std::string to_string() const;
};

NoiseSpec parse_noise(const std::string& text); // "gaussian:0.5" | "gaussian" | "uniform"

/// Unbiased noisy value oracle around a truth valuation whose range must
/// lie in [0, 1] (rescale first if needed). Queries draw fresh noise from
/// a deterministic stream and increment the counter exactly once.
class NoisyOracle {
public:
    NoisyOracle(Valuation truth, NoiseSpec noise, std::uint64_t seed)
        : truth_(std::move(truth)), noise_(noise), stream_(seed), seed_(seed) {}

    double query(const Point& x);
    std::uint64_t query_count() const { return queries_; }
    const Valuation& truth() const { return truth_; }
    std::size_t ground_size() const { return truth_.ground_size(); }
    std::uint64_t seed() const { return seed_; }

private:
    Valuation truth_;
    NoiseSpec noise_;
    RandomStream stream_;
    std::uint64_t seed_;
    std::uint64_t queries_ = 0;
};

/// Per-arm pull counts and empirical means after a MOSS run.
struct PullHistory {
    std::vector<std::uint64_t> pulls;
    std::vector<double> means;
    std::uint64_t rounds = 0;

    std::size_t arm_count() const { return pulls.size(); }
};

using ArmOracle = std::function<double()>;

/// MOSS pure exploration: each arm once, then pull
/// argmax_i mean_i + sqrt((4 / pulls_i) * log+(T' / (M * pulls_i))),
/// ties to the smallest index. Throws BudgetTooSmall when rounds < arms.
PullHistory moss_run(const std::vector<ArmOracle>& arms, std::uint64_t rounds);

/// Recommendation rule: arm i with probability pulls_i / rounds.
std::size_t moss_recommend(const PullHistory& history, RandomStream& stream);

/// Result of the phase-wise bandit greedy run.
struct GreedyBanditResult {
    Point chosen;                        // x_K
    std::vector<std::size_t> directions; // i_1, ..., i_K
    std::vector<Point> queried;          // lattice point queried per round
};

/// K phases of MOSS over the feasible update directions, floor(T/K)
/// rounds each; every pull queries the oracle at x_{k-1} + e_i. Requires
/// rounds >= K * (N + 2). Total queries: K * floor(T / K).
GreedyBanditResult greedy_bandit(NoisyOracle& oracle, const FeasibleRegion& region, int budget_k,
                                 std::uint64_t rounds, RandomStream& select_stream);

/// One explore-then-commit episode.
struct RegretRecord {
    std::vector<Point> played;       // x^1, ..., x^T
    std::vector<double> true_values; // f*(x^t)
    Point optimum;
    double optimum_value = 0.0;
    Point committed;
    std::uint64_t explore_rounds = 0; // realized exploration rounds
    std::uint64_t seed = 0;

    double cumulative_regret() const;
};

/// Explore for T~ = min(T, max(K(N+2), ceil(K * N^(1/3) * T^(2/3)))) rounds
/// using greedy_bandit (its queries are the round actions), then commit to
/// the recommended point for the remaining rounds.
RegretRecord etc_run(NoisyOracle& oracle, const FeasibleRegion& region, int budget_k,
                     std::uint64_t rounds, RandomStream& select_stream);

enum class RegretMode { simple, cumulative };

struct ExperimentConfig {
    Valuation truth;      // range in [0, 1]
    int budget_k = 1;
    std::uint64_t rounds = 0;
    NoiseSpec noise;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    RegretMode mode = RegretMode::simple;
    unsigned max_threads = 0; // 0 = hardware default

    ExperimentConfig(Valuation truth_, int k, std::uint64_t t)
        : truth(std::move(truth_)), budget_k(k), rounds(t) {}
};

struct TrialResult {
    std::uint64_t trial = 0; // 1-based
    double regret = 0.0;     // simple or cumulative per mode
    Point final_point;       // recommended / committed point
};

struct RegretSummary {
    std::vector<TrialResult> per_trial;
    double mean_regret = 0.0;
    double std_error = 0.0;
    Point optimum;
    double optimum_value = 0.0;
};

/// Row callback for per-round traces; invoked in (trial, round) order from
/// a single collector regardless of how many worker threads ran.
using TraceSink =
    std::function<void(std::uint64_t trial, std::uint64_t round, const Point& x,
                       double true_value, double regret_so_far)>;

/// Runs independent seeded trials (in parallel when no sink demands
/// per-round ordering pressure) and reports mean and standard error of
/// the regret. Identical configs and seeds reproduce results exactly.
RegretSummary estimate_regret(const ExperimentConfig& config, const TraceSink* sink = nullptr);

} // namespace mnat
