#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mnat/lattice.hpp"
#include "mnat/matroid.hpp"
#include "mnat/random.hpp"

namespace mnat {

/// Largest ground set for which exhaustive expert/comparator scans over
/// {0,1}^V are allowed.
inline constexpr std::size_t kMaxAdversarialGround = 16;

/// An i.i.d.-uniform sequence over the three matroid-distance functions.
struct AdversarialSequence {
    std::array<Matroid, 3> matroids;
    std::array<Valuation, 3> functions; // matroid_distance of each, memoized
    std::vector<int> choices;           // c^t in {0, 1, 2}
    std::uint64_t seed = 0;

    std::size_t ground_size() const { return matroids[0].ground_size(); }
    std::size_t rounds() const { return choices.size(); }
    const Valuation& function_at(std::size_t t) const { return functions[choices[t]]; }
};

/// Draws c^1, ..., c^T i.i.d. uniform over the three functions. All three
/// matroids must share the ground set.
AdversarialSequence sample_sequence(const Matroid& m1, const Matroid& m2, const Matroid& m3,
                                    std::uint64_t rounds, std::uint64_t seed);

/// Full-information online learner: produces x^t before observing f^t.
class Learner {
public:
    virtual ~Learner() = default;
    virtual Point act(std::size_t round) = 0;            // 1-based round
    virtual void observe(const Valuation& revealed) = 0; // f^t after acting
    virtual std::string name() const = 0;
};

/// Hedge over one expert per point of {0,1}^V (or an explicit expert
/// list): samples proportionally to weights, multiplies each weight by
/// exp(eta * f^t(x)) after the reveal. eta = 0 selects the default
/// sqrt(8 ln|X| / T). Throws GroundSetTooLarge for n > 16.
std::unique_ptr<Learner> make_mwu_learner(std::size_t ground_size, std::uint64_t rounds,
                                          std::uint64_t seed, double eta = 0.0);
std::unique_ptr<Learner> make_mwu_learner(std::vector<Point> experts, std::uint64_t rounds,
                                          std::uint64_t seed, double eta = 0.0);

/// Efficient baseline: round 1 plays 0, round t plays the exact greedy
/// maximizer of the previously revealed function.
std::unique_ptr<Learner> make_per_round_greedy_learner(std::size_t ground_size, int budget);

/// One full-information run over a sampled sequence.
struct AdversarialRun {
    std::vector<Point> played;
    std::vector<double> values;      // f^t(x^t)
    std::vector<double> regret_path; // running max_x cum_x - cum learner
    double comparator = 0.0;         // max_x sum_t f^t(x)
    double regret = 0.0;
    bool hit_common_base = false;    // some x^t with f_1 = f_2 = f_3 = 1
};

AdversarialRun run_adversarial(Learner& learner, const AdversarialSequence& seq);

/// max_x sum_t f^t(x) - sum_t f^t(x^t) for one realized play sequence.
/// Throws GroundSetTooLarge when the comparator scan is infeasible.
double adversarial_regret(const std::vector<Point>& played, const AdversarialSequence& seq);

/// Reduction distinguisher: runs the learner on a freshly sampled
/// sequence and answers true ("Yes") iff some played point is a common
/// base indicator of all three matroids (checked in exact integers).
bool distinguisher(Learner& learner, const Matroid& m1, const Matroid& m2, const Matroid& m3,
                   std::uint64_t rounds, std::uint64_t seed);

/// Exhaustive search for a common base; nullopt when none exists.
std::optional<Point> find_common_base(const Matroid& m1, const Matroid& m2, const Matroid& m3);

} // namespace mnat
