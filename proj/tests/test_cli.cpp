#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "mnat_cli_test") {
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = path / name;
        std::ofstream out(p, std::ios::binary);
        out << text;
        return p.string();
    }
    std::string read(const std::string& name) const {
        std::ifstream in(path / name, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = mnat::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kSeparable = R"({"family":"separable","tables":[[0,1,1.5],[0,0.8,1.0]],"K":2})";
const char* kSupermodular = R"({"family":"table","box":[1,1],"values":[0,0,0,1]})";
const char* kBandit =
    R"({"family":"separable","tables":[[0,0.3],[0,0.25]],"K":2})";
const char* kUniformMatroid = R"({"type":"uniform","n":3,"r":2})";

} // namespace

TEST_CASE("verify exits 0 on a concave instance") {
    TempDir dir;
    const auto path = dir.write("sep.json", kSeparable);
    const CliResult r = invoke({"verify", "--instance", path});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["witness"].is_null());
    CHECK(doc["pairs_checked"].get<int>() > 0);
}

TEST_CASE("verify exits 2 with a witness on the supermodular fixture") {
    TempDir dir;
    const auto path = dir.write("super.json", kSupermodular);
    const CliResult r = invoke({"verify", "--instance", path});
    CHECK(r.code == 2);
    const json doc = json::parse(r.out);
    CHECK(doc["pass"] == false);
    CHECK(doc["witness"]["x"] == json::array({1, 1}));
    CHECK(doc["witness"]["y"] == json::array({0, 0}));
    CHECK(doc["witness"]["i"] == 1);
}

TEST_CASE("verify honors --box restriction") {
    TempDir dir;
    const auto path = dir.write("super.json", kSupermodular);
    // Restricting to the slab x_1 = 0 removes the violating pair.
    const CliResult r = invoke({"verify", "--instance", path, "--box", "0;0,0;1"});
    CHECK(r.code == 0);
}

TEST_CASE("greedy emits a trajectory and audit") {
    TempDir dir;
    const auto path = dir.write("sep.json", kSeparable);
    const CliResult r =
        invoke({"greedy", "--instance", path, "--budget", "2", "--audit"});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["trajectory"]["directions"] == json::array({1, 2}));
    CHECK(doc["final_value"].get<double>() == doctest::Approx(1.8));
    CHECK(doc["audit"]["pass"] == true);
}

TEST_CASE("greedy audit flags the supermodular fixture") {
    TempDir dir;
    const auto path = dir.write("super.json", kSupermodular);
    const CliResult r = invoke(
        {"greedy", "--instance", path, "--budget", "2", "--selector", "zero", "--audit"});
    CHECK(r.code == 2);
    const json doc = json::parse(r.out);
    CHECK(doc["audit"]["pass"] == false);
}

TEST_CASE("seeded regret runs are byte-identical") {
    TempDir dir;
    const auto path = dir.write("bandit.json", kBandit);
    const auto csv1 = (dir.path / "a.csv").string();
    const auto csv2 = (dir.path / "b.csv").string();
    const CliResult r1 = invoke({"simple-regret", "--instance", path, "--budget", "2",
                                 "--rounds", "200", "--trials", "10", "--seed", "7", "--out",
                                 csv1});
    const CliResult r2 = invoke({"simple-regret", "--instance", path, "--budget", "2",
                                 "--rounds", "200", "--trials", "10", "--seed", "7", "--out",
                                 csv2});
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(dir.read("a.csv") == dir.read("b.csv"));
    CHECK(dir.read("a.summary.json") == dir.read("b.summary.json"));
    CHECK(dir.read("a.csv").rfind("trial,round,point,true_value,regret_so_far\n", 0) == 0);
}

TEST_CASE("cum-regret writes rows for every round") {
    TempDir dir;
    const auto path = dir.write("bandit.json", kBandit);
    const auto csv = (dir.path / "c.csv").string();
    const CliResult r = invoke({"cum-regret", "--instance", path, "--budget", "2", "--rounds",
                                "50", "--trials", "2", "--seed", "3", "--out", csv});
    REQUIRE(r.code == 0);
    const std::string text = dir.read("c.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 50);
}

TEST_CASE("adversarial command round-trips") {
    TempDir dir;
    const auto path = dir.write("u23.json", kUniformMatroid);
    const CliResult r = invoke({"adversarial", "--m1", path, "--m2", path, "--m3", path,
                                "--learner", "greedy", "--rounds", "30", "--trials", "3",
                                "--seed", "11"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["yes_fraction"].get<double>() == doctest::Approx(1.0)); // identical matroids
    CHECK(doc["per_trial"].size() == 3);
}

TEST_CASE("malformed input fails cleanly") {
    TempDir dir;
    SUBCASE("bad JSON") {
        const auto path = dir.write("bad.json", "{not json");
        const CliResult r = invoke({"verify", "--instance", path});
        CHECK(r.code == 1);
        CHECK(r.err.find("error:") == 0);
    }
    SUBCASE("missing file") {
        const CliResult r = invoke({"verify", "--instance", (dir.path / "nope.json").string()});
        CHECK(r.code == 1);
    }
    SUBCASE("unknown subcommand") {
        const CliResult r = invoke({"frobnicate"});
        CHECK(r.code == 1);
    }
    SUBCASE("unknown selector") {
        const auto path = dir.write("sep.json", kSeparable);
        const CliResult r =
            invoke({"greedy", "--instance", path, "--budget", "2", "--selector", "best"});
        CHECK(r.code == 1);
    }
}
