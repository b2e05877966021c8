#include <doctest.h>

#include <cmath>

#include "mnat/bandit.hpp"
#include "mnat/greedy.hpp"
#include "mnat/mchecker.hpp"
#include "mnat/valuations.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mnat;

namespace {

Valuation bandit_truth() { return memoized(fixtures::separable4()); }

} // namespace

TEST_CASE("noisy oracle basics") {
    SUBCASE("zero noise returns exact values") {
        NoisyOracle oracle(bandit_truth(), NoiseSpec::gaussian(0.0), 5);
        CHECK(oracle.query(Point({1, 1, 0, 0})) == doctest::Approx(0.285));
        CHECK(oracle.query_count() == 1);
    }
    SUBCASE("same seed, same sequence") {
        NoisyOracle a(bandit_truth(), NoiseSpec::gaussian(1.0), 99);
        NoisyOracle b(bandit_truth(), NoiseSpec::gaussian(1.0), 99);
        for (int i = 0; i < 50; ++i) {
            CHECK(a.query(Point({0, 0, 0, 0})) == b.query(Point({0, 0, 0, 0})));
        }
    }
    SUBCASE("gaussian noise is centered") {
        NoisyOracle oracle(bandit_truth(), NoiseSpec::gaussian(1.0), 2024);
        double sum = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) sum += oracle.query(Point({0, 0, 0, 0}));
        CHECK(std::abs(sum / n) < 0.02); // 5 sigma / sqrt(n) = 0.0158
        CHECK(oracle.query_count() == n);
    }
    SUBCASE("bounded noise stays in [-1, 1]") {
        NoisyOracle oracle(bandit_truth(), NoiseSpec::bounded_uniform(), 7);
        for (int i = 0; i < 1000; ++i) {
            const double v = oracle.query(Point({0, 0, 0, 0}));
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("range check flags values above 1") {
    NoisyOracle oracle(fixtures::separable2(), NoiseSpec::gaussian(0.0), 1);
    CHECK_NOTHROW(oracle.query(Point({1, 0})));                       // 1.0
    CHECK_THROWS_AS(oracle.query(Point({1, 1})), RangeViolation);     // 1.8
    CHECK_THROWS_AS(oracle.query(Point({5, 5})), QueryOutsideDomain); // -inf
}

TEST_CASE("moss_run") {
    SUBCASE("single arm absorbs the whole budget") {
        std::vector<ArmOracle> arms{[]() { return 0.5; }};
        const PullHistory h = moss_run(arms, 100);
        CHECK(h.pulls == std::vector<std::uint64_t>{100});
        CHECK(h.means[0] == doctest::Approx(0.5));
    }
    SUBCASE("budget below the arm count is rejected") {
        std::vector<ArmOracle> arms{[]() { return 0.0; }, []() { return 0.0; }};
        CHECK_THROWS_AS(moss_run(arms, 1), BudgetTooSmall);
    }
    SUBCASE("zero noise: the better arm dominates the pull counts") {
        std::vector<ArmOracle> arms{[]() { return 0.9; }, []() { return 0.1; }};
        const PullHistory h = moss_run(arms, 10000);
        CHECK(h.pulls[0] + h.pulls[1] == 10000);
        CHECK(h.pulls[0] > 9500);
        CHECK(h.pulls[1] >= 1); // forced exploration
        CHECK(h.means[0] == doctest::Approx(0.9));
    }
    SUBCASE("forced exploration touches every arm") {
        std::vector<ArmOracle> arms;
        for (int i = 0; i < 6; ++i) {
            arms.push_back([i]() { return i == 2 ? 1.0 : 0.0; });
        }
        const PullHistory h = moss_run(arms, 50);
        for (std::uint64_t p : h.pulls) CHECK(p >= 1);
        CHECK(h.rounds == 50);
    }
}

TEST_CASE("moss regret on the 5-arm gap-0.1 instance stays under the bound") {
    // Means 0.9, 0.8, 0.7, 0.6, 0.5; sigma = 1; T' = 2000 here (the
    // acceptance suite runs the full T' = 10^4 x 200 trials version).
    const std::vector<double> mu{0.9, 0.8, 0.7, 0.6, 0.5};
    const std::uint64_t t_prime = 2000;
    const int trials = 30;
    double total_regret = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        RandomStream noise = RandomStream::derive(555, {static_cast<std::uint64_t>(trial)});
        std::vector<ArmOracle> arms;
        for (double m : mu) {
            arms.push_back([m, &noise]() { return m + noise.gaussian(1.0); });
        }
        const PullHistory h = moss_run(arms, t_prime);
        double regret = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            regret += static_cast<double>(h.pulls[i]) * (0.9 - mu[i]);
        }
        total_regret += regret;
    }
    const double mean_regret = total_regret / trials;
    CHECK(mean_regret <= 39.0 * std::sqrt(5.0 * static_cast<double>(t_prime)) + 5.0);
    CHECK(mean_regret > 0.0);
}

TEST_CASE("moss_recommend follows the pull frequencies") {
    SUBCASE("single-arm history") {
        PullHistory h;
        h.pulls = {10};
        h.means = {0.3};
        h.rounds = 10;
        RandomStream stream(3);
        for (int i = 0; i < 20; ++i) CHECK(moss_recommend(h, stream) == 0);
    }
    SUBCASE("frequency matches counts (7500, 2500)") {
        PullHistory h;
        h.pulls = {7500, 2500};
        h.means = {0.9, 0.1};
        h.rounds = 10000;
        RandomStream stream(17);
        int first = 0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            if (moss_recommend(h, stream) == 0) ++first;
        }
        const double freq = static_cast<double>(first) / draws;
        CHECK(std::abs(freq - 0.75) < 0.01);
        // Chi-squared goodness of fit at df = 1; p > 0.001 means < 10.828.
        const double expected_first = 0.75 * draws;
        const double expected_second = 0.25 * draws;
        const double chi2 =
            (first - expected_first) * (first - expected_first) / expected_first +
            (draws - first - expected_second) * (draws - first - expected_second) /
                expected_second;
        CHECK(chi2 < 10.828);
    }
}

TEST_CASE("greedy_bandit") {
    const Valuation truth = bandit_truth();
    FeasibleRegion region(truth, 2);

    SUBCASE("zero noise recovers the exact greedy point") {
        // Wide gaps so the pull counts concentrate; near-tie arms keep a
        // noticeable recommendation mass even without noise.
        const Valuation wide = fixtures::separable2_wide();
        FeasibleRegion wide_region(wide, 2);
        NoisyOracle oracle(wide, NoiseSpec::gaussian(0.0), 31);
        RandomStream select(32);
        const GreedyBanditResult run = greedy_bandit(oracle, wide_region, 2, 20000, select);
        CHECK(run.chosen == greedy_exact(wide, 2).final_point());
        CHECK(run.chosen == Point({1, 1}));
    }
    SUBCASE("query accounting") {
        NoisyOracle oracle(truth, NoiseSpec::gaussian(1.0), 41);
        RandomStream select(42);
        const std::uint64_t t = 1001;
        const GreedyBanditResult run = greedy_bandit(oracle, region, 2, t, select);
        CHECK(oracle.query_count() == 2 * (t / 2));
        CHECK(run.queried.size() == oracle.query_count());
    }
    SUBCASE("budget precondition") {
        NoisyOracle oracle(truth, NoiseSpec::gaussian(1.0), 43);
        RandomStream select(44);
        CHECK_THROWS_AS(greedy_bandit(oracle, region, 2, 11, select), BudgetTooSmall);
    }
    SUBCASE("all queries stay feasible") {
        NoisyOracle oracle(truth, NoiseSpec::gaussian(1.0), 47);
        RandomStream select(48);
        const GreedyBanditResult run = greedy_bandit(oracle, region, 2, 500, select);
        for (const Point& p : run.queried) CHECK(region.contains(p));
        CHECK(region.contains(run.chosen));
    }
}

TEST_CASE("etc_run") {
    const Valuation truth = bandit_truth();
    FeasibleRegion region(truth, 2);

    SUBCASE("tiny budget clips to pure exploration") {
        NoisyOracle oracle(truth, NoiseSpec::gaussian(1.0), 51);
        RandomStream select(52);
        const std::uint64_t t = 12; // K(N+2) = 12 exactly
        const RegretRecord record = etc_run(oracle, region, 2, t, select);
        CHECK(record.played.size() == t);
        CHECK(record.explore_rounds == t);
    }
    SUBCASE("zero noise commits to the optimum") {
        const Valuation wide = fixtures::separable2_wide();
        FeasibleRegion wide_region(wide, 2);
        NoisyOracle oracle(wide, NoiseSpec::gaussian(0.0), 53);
        RandomStream select(54);
        const RegretRecord record = etc_run(oracle, wide_region, 2, 100000, select);
        CHECK(record.committed == record.optimum);
        const double max_gap = record.optimum_value; // worst feasible value is 0
        CHECK(record.cumulative_regret() <=
              static_cast<double>(record.explore_rounds) * max_gap + kCheckTolerance);
    }
    SUBCASE("exploration length follows the two-thirds rule") {
        NoisyOracle oracle(truth, NoiseSpec::gaussian(1.0), 55);
        RandomStream select(56);
        const std::uint64_t t = 10000;
        const RegretRecord record = etc_run(oracle, region, 2, t, select);
        // ceil(2 * 4^(1/3) * 10000^(2/3)) = ceil(1473.4...) = 1474; the
        // realized count is K * floor(T~ / K) = 1474.
        CHECK(record.explore_rounds == 1474);
        CHECK(record.played.size() == t);
        for (std::size_t r = record.explore_rounds; r < record.played.size(); ++r) {
            CHECK(record.played[r] == record.committed);
        }
    }
}

TEST_CASE("estimate_regret") {
    SUBCASE("single noiseless trial has zero spread") {
        ExperimentConfig config(fixtures::separable2_wide(), 2, 2000);
        config.noise = NoiseSpec::gaussian(0.0);
        config.trials = 1;
        config.master_seed = 7;
        config.mode = RegretMode::simple;
        const RegretSummary summary = estimate_regret(config);
        CHECK(summary.std_error == 0.0);
        CHECK(summary.mean_regret == doctest::Approx(0.0));
        CHECK(summary.optimum_value == doctest::Approx(0.85));
    }
    SUBCASE("identical seeds reproduce identical summaries") {
        ExperimentConfig config(bandit_truth(), 2, 800);
        config.noise = NoiseSpec::gaussian(1.0);
        config.trials = 8;
        config.master_seed = 99;
        config.mode = RegretMode::cumulative;
        const RegretSummary a = estimate_regret(config);
        const RegretSummary b = estimate_regret(config);
        REQUIRE(a.per_trial.size() == b.per_trial.size());
        for (std::size_t i = 0; i < a.per_trial.size(); ++i) {
            CHECK(a.per_trial[i].regret == b.per_trial[i].regret);
            CHECK(a.per_trial[i].final_point == b.per_trial[i].final_point);
        }
        CHECK(a.mean_regret == b.mean_regret);
        CHECK(a.std_error == b.std_error);
    }
    SUBCASE("results do not depend on the thread count") {
        ExperimentConfig config(bandit_truth(), 2, 600);
        config.noise = NoiseSpec::gaussian(1.0);
        config.trials = 6;
        config.master_seed = 123;
        config.mode = RegretMode::simple;
        config.max_threads = 1;
        const RegretSummary serial = estimate_regret(config);
        config.max_threads = 4;
        const RegretSummary parallel = estimate_regret(config);
        for (std::size_t i = 0; i < serial.per_trial.size(); ++i) {
            CHECK(serial.per_trial[i].regret == parallel.per_trial[i].regret);
        }
    }
    SUBCASE("doubling trials shrinks the standard error") {
        ExperimentConfig config(bandit_truth(), 2, 400);
        config.noise = NoiseSpec::gaussian(1.0);
        config.trials = 60;
        config.master_seed = 2025;
        config.mode = RegretMode::simple;
        const RegretSummary small = estimate_regret(config);
        config.trials = 120;
        const RegretSummary big = estimate_regret(config);
        // Expect roughly 1/sqrt(2); allow 30 percent either way.
        const double ratio = big.std_error / small.std_error;
        CHECK(ratio < 1.0 / std::sqrt(2.0) * 1.3);
        CHECK(ratio > 1.0 / std::sqrt(2.0) * 0.7);
    }
    SUBCASE("trace sink sees rows in trial order") {
        ExperimentConfig config(bandit_truth(), 2, 100);
        config.noise = NoiseSpec::gaussian(1.0);
        config.trials = 3;
        config.master_seed = 4;
        config.mode = RegretMode::cumulative;
        std::uint64_t last_trial = 0;
        std::uint64_t rows = 0;
        TraceSink sink = [&](std::uint64_t trial, std::uint64_t round, const Point&, double,
                             double) {
            CHECK(trial >= last_trial);
            if (trial == last_trial + 1) CHECK(round == 1);
            last_trial = trial;
            ++rows;
        };
        estimate_regret(config, &sink);
        CHECK(rows == 3 * 100);
    }
}
