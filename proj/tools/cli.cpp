#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mnat/adversarial.hpp"
#include "mnat/bandit.hpp"
#include "mnat/greedy.hpp"
#include "mnat/instance_io.hpp"
#include "mnat/mchecker.hpp"

namespace mnat::cli {

namespace {

using nlohmann::json;

unsigned thread_cap() {
    if (const char* env = std::getenv("MNAT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0; // library default
}

Point parse_point(const std::string& text) {
    std::vector<int> coords;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(';', pos);
        const std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        coords.push_back(std::stoi(tok));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return Point(std::move(coords));
}

std::string summary_path_for(const std::string& csv_path) {
    const std::string suffix = ".csv";
    if (csv_path.size() > suffix.size() &&
        csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return csv_path.substr(0, csv_path.size() - suffix.size()) + ".summary.json";
    }
    return csv_path + ".summary.json";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

struct RegretFlags {
    std::string instance;
    int budget = 1;
    std::uint64_t rounds = 0;
    std::uint64_t trials = 1;
    std::string noise = "gaussian:1";
    std::uint64_t seed = 0;
    std::string out_path;
};

void add_regret_flags(CLI::App* cmd, RegretFlags& flags) {
    cmd->add_option("--instance", flags.instance, "instance JSON path")->required();
    cmd->add_option("--budget", flags.budget, "budget K")->required();
    cmd->add_option("--rounds", flags.rounds, "round budget T")->required();
    cmd->add_option("--trials", flags.trials, "independent trials");
    cmd->add_option("--noise", flags.noise, "gaussian[:sigma] | uniform");
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--out", flags.out_path, "CSV output path (summary sidecar next to it)");
}

int run_regret(const RegretFlags& flags, RegretMode mode, std::ostream& out) {
    ExperimentConfig config(load_valuation(flags.instance), flags.budget, flags.rounds);
    config.noise = parse_noise(flags.noise);
    config.trials = flags.trials;
    config.master_seed = flags.seed;
    config.mode = mode;
    config.max_threads = thread_cap();

    std::string csv;
    std::optional<TraceSink> sink;
    if (!flags.out_path.empty()) {
        csv = "trial,round,point,true_value,regret_so_far\n";
        sink = [&csv](std::uint64_t trial, std::uint64_t round, const Point& x, double value,
                      double regret) {
            csv += std::to_string(trial);
            csv += ',';
            csv += std::to_string(round);
            csv += ',';
            csv += format_point(x);
            csv += ',';
            csv += format_double(value);
            csv += ',';
            csv += format_double(regret);
            csv += '\n';
        };
    }

    const RegretSummary summary = estimate_regret(config, sink ? &*sink : nullptr);

    json doc;
    doc["command"] = mode == RegretMode::simple ? "simple-regret" : "cum-regret";
    doc["config"] = {{"instance", flags.instance}, {"budget", flags.budget},
                     {"rounds", flags.rounds},     {"trials", flags.trials},
                     {"noise", config.noise.to_string()}, {"seed", flags.seed}};
    doc["optimum"] = point_to_json(summary.optimum);
    doc["optimum_value"] = summary.optimum_value;
    doc["mean_regret"] = summary.mean_regret;
    doc["std_error"] = summary.std_error;
    json trials = json::array();
    for (const TrialResult& t : summary.per_trial) {
        trials.push_back({{"trial", t.trial},
                          {"regret", t.regret},
                          {"final_point", point_to_json(t.final_point)}});
    }
    doc["per_trial"] = trials;

    if (!flags.out_path.empty()) {
        write_text(flags.out_path, csv);
        write_text(summary_path_for(flags.out_path), doc.dump(2) + "\n");
    }
    out << doc.dump(2) << "\n";
    return 0;
}

int run_verify(const std::string& instance, const std::string& box, std::ostream& out) {
    Valuation f = load_valuation(instance);
    if (!box.empty()) {
        const std::size_t comma = box.find(',');
        if (comma == std::string::npos) {
            throw Error("--box expects 'a,b' with semicolon-joined coordinates");
        }
        f = restrict_to_interval(f, parse_point(box.substr(0, comma)),
                                 parse_point(box.substr(comma + 1)));
    }
    const ExchangeReport report = check_exchange(f);
    out << report_to_json(report).dump(2) << "\n";
    return report.pass ? 0 : 2;
}

int run_greedy(const std::string& instance, int budget, const std::string& selector_name,
               bool audit, std::ostream& out) {
    const Valuation f = load_valuation(instance);

    Trajectory traj;
    if (selector_name == "exact") {
        traj = greedy_exact(f, budget);
    } else if (selector_name == "zero") {
        traj = greedy_with_selector(f, budget, zero_selector());
    } else if (selector_name == "worst") {
        traj = greedy_with_selector(f, budget, worst_feasible_selector(f, budget));
    } else if (selector_name.rfind("random:", 0) == 0) {
        const std::uint64_t seed = std::stoull(selector_name.substr(7));
        traj = greedy_with_selector(f, budget, random_feasible_selector(f, budget, seed));
    } else {
        throw Error("unknown selector '" + selector_name +
                    "' (expected exact|zero|worst|random:<seed>)");
    }

    json doc;
    doc["command"] = "greedy";
    doc["trajectory"] = trajectory_to_json(traj);
    doc["final_value"] = f.value(traj.final_point()).value();

    int code = 0;
    if (audit) {
        const RobustnessAudit result = audit_robustness(f, traj, FeasibleRegion(f, budget));
        doc["audit"] = audit_to_json(result);
        if (!result.passed()) code = 2;
    }
    out << doc.dump(2) << "\n";
    return code;
}

int run_adversarial_cmd(const std::string& m1_path, const std::string& m2_path,
                        const std::string& m3_path, const std::string& learner_name,
                        std::uint64_t rounds, std::uint64_t trials, std::uint64_t seed,
                        const std::string& out_path, std::ostream& out) {
    const Matroid m1 = load_matroid(m1_path);
    const Matroid m2 = load_matroid(m2_path);
    const Matroid m3 = load_matroid(m3_path);
    const std::size_t n = m1.ground_size();

    std::string csv = "trial,round,point,true_value,regret_so_far\n";
    double regret_sum = 0.0, regret_sq = 0.0;
    std::uint64_t yes_count = 0;
    json per_trial = json::array();

    for (std::uint64_t trial = 1; trial <= trials; ++trial) {
        const std::uint64_t seq_seed = RandomStream::derive(seed, {trial, 0}).next_u64();
        const std::uint64_t learner_seed = RandomStream::derive(seed, {trial, 1}).next_u64();
        const AdversarialSequence seq = sample_sequence(m1, m2, m3, rounds, seq_seed);

        std::unique_ptr<Learner> learner;
        if (learner_name == "mwu") {
            learner = make_mwu_learner(n, rounds, learner_seed);
        } else if (learner_name == "greedy") {
            learner = make_per_round_greedy_learner(n, static_cast<int>(n));
        } else {
            throw Error("unknown learner '" + learner_name + "' (expected mwu|greedy)");
        }

        const AdversarialRun run = run_adversarial(*learner, seq);
        regret_sum += run.regret;
        regret_sq += run.regret * run.regret;
        if (run.hit_common_base) ++yes_count;
        per_trial.push_back({{"trial", trial},
                             {"regret", run.regret},
                             {"comparator", run.comparator},
                             {"hit_common_base", run.hit_common_base}});
        if (!out_path.empty()) {
            for (std::size_t t = 0; t < run.played.size(); ++t) {
                csv += std::to_string(trial);
                csv += ',';
                csv += std::to_string(t + 1);
                csv += ',';
                csv += format_point(run.played[t]);
                csv += ',';
                csv += format_double(run.values[t]);
                csv += ',';
                csv += format_double(run.regret_path[t]);
                csv += '\n';
            }
        }
    }

    const double mean = regret_sum / static_cast<double>(trials);
    const double var = trials > 1
                           ? (regret_sq - regret_sum * regret_sum / static_cast<double>(trials)) /
                                 static_cast<double>(trials - 1)
                           : 0.0;
    json doc;
    doc["command"] = "adversarial";
    doc["config"] = {{"m1", m1_path}, {"m2", m2_path},       {"m3", m3_path},
                     {"learner", learner_name}, {"rounds", rounds}, {"trials", trials},
                     {"seed", seed}};
    doc["mean_regret"] = mean;
    doc["std_error"] = trials > 1 ? std::sqrt(std::max(0.0, var) / static_cast<double>(trials)) : 0.0;
    doc["yes_fraction"] = static_cast<double>(yes_count) / static_cast<double>(trials);
    doc["per_trial"] = per_trial;

    if (!out_path.empty()) {
        write_text(out_path, csv);
        write_text(summary_path_for(out_path), doc.dump(2) + "\n");
    }
    out << doc.dump(2) << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"online M-natural-concave function maximization toolkit"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "exchange-property check of an instance");
    std::string verify_instance, verify_box;
    verify->add_option("--instance", verify_instance, "instance JSON path")->required();
    verify->add_option("--box", verify_box, "restrict to 'a,b' (points as 'x;y;...')");

    // greedy
    auto* greedy = app.add_subcommand("greedy", "run the greedy procedure");
    std::string greedy_instance, selector = "exact";
    int greedy_budget = 1;
    bool audit = false;
    greedy->add_option("--instance", greedy_instance, "instance JSON path")->required();
    greedy->add_option("--budget", greedy_budget, "budget K")->required();
    greedy->add_option("--selector", selector, "exact|zero|worst|random:<seed>");
    greedy->add_flag("--audit", audit, "check the additive-robustness guarantee");

    // simple-regret / cum-regret
    auto* simple = app.add_subcommand("simple-regret", "bandit pure-exploration experiment");
    RegretFlags simple_flags;
    add_regret_flags(simple, simple_flags);
    auto* cum = app.add_subcommand("cum-regret", "explore-then-commit regret experiment");
    RegretFlags cum_flags;
    add_regret_flags(cum, cum_flags);

    // adversarial
    auto* adv = app.add_subcommand("adversarial", "3-matroid full-information experiment");
    std::string m1_path, m2_path, m3_path, learner_name = "mwu", adv_out;
    std::uint64_t adv_rounds = 0, adv_trials = 1, adv_seed = 0;
    adv->add_option("--m1", m1_path, "matroid JSON path")->required();
    adv->add_option("--m2", m2_path, "matroid JSON path")->required();
    adv->add_option("--m3", m3_path, "matroid JSON path")->required();
    adv->add_option("--learner", learner_name, "mwu|greedy");
    adv->add_option("--rounds", adv_rounds, "rounds T")->required();
    adv->add_option("--trials", adv_trials, "independent trials");
    adv->add_option("--seed", adv_seed, "master seed");
    adv->add_option("--out", adv_out, "CSV output path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends print through CLI11's own machinery.
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (verify->parsed()) return run_verify(verify_instance, verify_box, out);
        if (greedy->parsed()) {
            return run_greedy(greedy_instance, greedy_budget, selector, audit, out);
        }
        if (simple->parsed()) return run_regret(simple_flags, RegretMode::simple, out);
        if (cum->parsed()) return run_regret(cum_flags, RegretMode::cumulative, out);
        if (adv->parsed()) {
            return run_adversarial_cmd(m1_path, m2_path, m3_path, learner_name, adv_rounds,
                                       adv_trials, adv_seed, adv_out, out);
        }
        err << "error: no subcommand given\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace mnat::cli
