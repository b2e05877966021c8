#include "mnat/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "mnat/greedy.hpp"
#include "mnat/valuations.hpp"

namespace mnat {

AdversarialSequence sample_sequence(const Matroid& m1, const Matroid& m2, const Matroid& m3,
                                    std::uint64_t rounds, std::uint64_t seed) {
    if (m1.ground_size() != m2.ground_size() || m1.ground_size() != m3.ground_size()) {
        throw Error("the three matroids must share a ground set");
    }
    AdversarialSequence seq{
        {m1, m2, m3},
        {memoized(matroid_distance(m1)), memoized(matroid_distance(m2)),
         memoized(matroid_distance(m3))},
        {},
        seed};
    RandomStream stream(seed);
    seq.choices.reserve(rounds);
    for (std::uint64_t t = 0; t < rounds; ++t) {
        seq.choices.push_back(static_cast<int>(stream.uniform_below(3)));
    }
    return seq;
}

namespace {

class MwuLearner final : public Learner {
public:
    MwuLearner(std::vector<Point> experts, std::uint64_t rounds, std::uint64_t seed, double eta)
        : experts_(std::move(experts)), stream_(seed) {
        if (experts_.empty()) throw Error("mwu learner needs at least one expert");
        eta_ = eta > 0.0 ? eta
                         : std::sqrt(8.0 * std::log(static_cast<double>(experts_.size())) /
                                     static_cast<double>(std::max<std::uint64_t>(rounds, 1)));
        weights_.assign(experts_.size(), 1.0 / static_cast<double>(experts_.size()));
    }

    Point act(std::size_t) override {
        const double u = stream_.uniform01();
        double acc = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            acc += weights_[i];
            if (u < acc) return experts_[i];
        }
        return experts_.back();
    }

    void observe(const Valuation& revealed) override {
        double total = 0.0;
        for (std::size_t i = 0; i < experts_.size(); ++i) {
            weights_[i] *= std::exp(eta_ * revealed.value(experts_[i]).value());
            total += weights_[i];
        }
        for (double& w : weights_) w /= total;
    }

    std::string name() const override { return "mwu"; }

private:
    std::vector<Point> experts_;
    std::vector<double> weights_; // kept normalized
    RandomStream stream_;
    double eta_;
};

class PerRoundGreedyLearner final : public Learner {
public:
    PerRoundGreedyLearner(std::size_t ground_size, int budget)
        : ground_size_(ground_size), budget_(budget) {}

    Point act(std::size_t) override {
        if (!last_) return Point::zeros(ground_size_);
        return greedy_exact(*last_, budget_).final_point();
    }

    void observe(const Valuation& revealed) override { last_ = revealed; }

    std::string name() const override { return "greedy"; }

private:
    std::size_t ground_size_;
    int budget_;
    std::optional<Valuation> last_;
};

std::vector<Point> hypercube_experts(std::size_t n) {
    if (n > kMaxAdversarialGround) {
        throw GroundSetTooLarge("expert enumeration over {0,1}^" + std::to_string(n) +
                                " exceeds the supported ground size");
    }
    std::vector<Point> experts;
    experts.reserve(std::size_t{1} << n);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        experts.push_back(Matroid::point_of(mask, n));
    }
    return experts;
}

} // namespace

std::unique_ptr<Learner> make_mwu_learner(std::size_t ground_size, std::uint64_t rounds,
                                          std::uint64_t seed, double eta) {
    return std::make_unique<MwuLearner>(hypercube_experts(ground_size), rounds, seed, eta);
}

std::unique_ptr<Learner> make_mwu_learner(std::vector<Point> experts, std::uint64_t rounds,
                                          std::uint64_t seed, double eta) {
    return std::make_unique<MwuLearner>(std::move(experts), rounds, seed, eta);
}

std::unique_ptr<Learner> make_per_round_greedy_learner(std::size_t ground_size, int budget) {
    return std::make_unique<PerRoundGreedyLearner>(ground_size, budget);
}

AdversarialRun run_adversarial(Learner& learner, const AdversarialSequence& seq) {
    const std::size_t n = seq.ground_size();
    if (n > kMaxAdversarialGround) {
        throw GroundSetTooLarge("comparator scan over {0,1}^" + std::to_string(n) +
                                " exceeds the supported ground size");
    }
    const std::size_t num_points = std::size_t{1} << n;

    // Per-function value tables over {0,1}^V, then per-point running sums.
    std::array<std::vector<double>, 3> table;
    for (int i = 0; i < 3; ++i) {
        table[i].resize(num_points);
        for (std::uint32_t mask = 0; mask < num_points; ++mask) {
            table[i][mask] = seq.functions[i].value(Matroid::point_of(mask, n)).value();
        }
    }

    AdversarialRun run;
    std::vector<double> cum(num_points, 0.0);
    double learner_sum = 0.0;
    for (std::size_t t = 0; t < seq.rounds(); ++t) {
        const Point x = learner.act(t + 1);
        const int c = seq.choices[t];
        const std::uint32_t mask = Matroid::mask_of(x);
        const double value = table[c][mask];

        run.played.push_back(x);
        run.values.push_back(value);
        learner_sum += value;
        if (tau(seq.matroids[0], x) == 0 && tau(seq.matroids[1], x) == 0 &&
            tau(seq.matroids[2], x) == 0) {
            run.hit_common_base = true;
        }

        double best_cum = -std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < num_points; ++p) {
            cum[p] += table[c][p];
            best_cum = std::max(best_cum, cum[p]);
        }
        run.regret_path.push_back(best_cum - learner_sum);

        learner.observe(seq.functions[c]);
    }
    run.comparator = *std::max_element(cum.begin(), cum.end());
    run.regret = run.comparator - learner_sum;
    return run;
}

double adversarial_regret(const std::vector<Point>& played, const AdversarialSequence& seq) {
    const std::size_t n = seq.ground_size();
    if (n > kMaxAdversarialGround) {
        throw GroundSetTooLarge("comparator scan over {0,1}^" + std::to_string(n) +
                                " exceeds the supported ground size");
    }
    assert(played.size() == seq.rounds());
    const std::size_t num_points = std::size_t{1} << n;

    // counts[i] = how often f_i appears; the comparator is a counted sum.
    std::array<std::uint64_t, 3> counts{0, 0, 0};
    double learner_sum = 0.0;
    for (std::size_t t = 0; t < seq.rounds(); ++t) {
        ++counts[seq.choices[t]];
        learner_sum += seq.function_at(t).value(played[t]).value();
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < num_points; ++mask) {
        const Point p = Matroid::point_of(mask, n);
        double s = 0.0;
        for (int i = 0; i < 3; ++i) {
            s += static_cast<double>(counts[i]) * seq.functions[i].value(p).value();
        }
        best = std::max(best, s);
    }
    return best - learner_sum;
}

bool distinguisher(Learner& learner, const Matroid& m1, const Matroid& m2, const Matroid& m3,
                   std::uint64_t rounds, std::uint64_t seed) {
    const AdversarialSequence seq = sample_sequence(m1, m2, m3, rounds, seed);
    const AdversarialRun run = run_adversarial(learner, seq);
    return run.hit_common_base;
}

std::optional<Point> find_common_base(const Matroid& m1, const Matroid& m2, const Matroid& m3) {
    for (std::uint32_t b : m1.base_masks()) {
        if (m2.is_base(b) && m3.is_base(b)) {
            return Matroid::point_of(b, m1.ground_size());
        }
    }
    return std::nullopt;
}

} // namespace mnat
