#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>
#include <vector>

#include "vmorl/cli/commands.hpp"
#include "vmorl/cli/run_config.hpp"
#include "vmorl/core/rng.hpp"
#include "vmorl/envs/tabular.hpp"

using namespace vmorl;
using namespace vmorl::cli;
namespace fs = std::filesystem;

namespace {

struct Output {
    int code;
    std::string out;
    std::string err;
};

Output run(std::vector<std::string> args) {
    args.insert(args.begin(), "vmorl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const fs::path kScratchRoot = fs::temp_directory_path() / ("vmorl_cli_" + std::to_string(::getpid()));

struct RemoveScratch {
    ~RemoveScratch() {
        std::error_code ec;
        fs::remove_all(kScratchRoot, ec);
    }
} remove_scratch;

fs::path scratch(const std::string& name) {
    const auto dir = kScratchRoot / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const char* kSmallTrain =
    "trainer.steps_per_update = 40\n"
    "trainer.env_copies = 1\n"
    "trainer.epochs = 2\n"
    "trainer.minibatch = 16\n"
    "trainer.updates_per_objective = 2\n"
    "trainer.hidden = 8\n"
    "trainer.learning_rate = 0.001\n"
    "trainer.termination_epsilon = 0\n"
    "eval.episodes = 3\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("configuration serializes and parses back exactly") {
    RunConfig c;
    c.trainer.gamma = 0.9;
    c.trainer.hidden = {16, 8};
    c.trainer.seed = 1234567890123ULL;
    c.trainer.learning_rate = 0.1 + 0.2;
    c.env.name = "toy_locomotion";
    c.env.channels = {3, 0};
    c.env.grid.treasures = {{1, 2, 3.5}, {4, 0, 0.1}};
    c.explain_increment = {0.5, 1.0 / 3.0};
    c.qa = explain::default_qa({"a", "b"});
    c.qa.entries[1].direction = explain::Direction::minimize;
    c.qa.plan = "go left";
    const std::string text = serialize_config(c);
    const auto back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.trainer.learning_rate == c.trainer.learning_rate);
    CHECK(back.trainer.seed == c.trainer.seed);
    CHECK(back.env.channels == c.env.channels);
    CHECK(back.qa.entries[1].direction == explain::Direction::minimize);
    CHECK(serialize_config(parse_config(serialize_config(RunConfig{}))) == serialize_config(RunConfig{}));
}

TEST_CASE("configuration errors name the source line") {
    auto message = [](const std::string& text) {
        try {
            parse_config(text, "cfg.txt");
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("# c\n\ntrainer.gama = 0.9\n").rfind("cfg.txt:3: unknown key 'trainer.gama'", 0) == 0);
    CHECK(message("trainer.gamma\n").rfind("cfg.txt:1:", 0) == 0);
    CHECK(message("trainer.epochs = -3\n").rfind("cfg.txt:1:", 0) == 0);
    CHECK(message("trainer.gamma = abc\n").rfind("cfg.txt:1:", 0) == 0);
    CHECK(message("trainer.gamma = 0.5\n") == "no error");
    CHECK_THROWS_AS(load_config("/nonexistent/vmorl.cfg"), std::exception);
}

TEST_CASE("invalid configurations are rejected") {
    RunConfig c;
    c.env.name = "mujoco";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.eval_episodes = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.env.name = "tabular";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("usage errors and a missing config file exit nonzero") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"eval"}).code == kExitUsage);
    const auto missing = run({"train", "--config", "/nonexistent/run.cfg"});
    CHECK(missing.code == kExitRuntime);
    CHECK(missing.err.find("/nonexistent/run.cfg") != std::string::npos);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("ccs of a constant-reward MOMDP is a single vector") {
    const auto dir = scratch("ccs_const");
    write_text(dir / "m.txt", "1 1 2 0.9\ninitial 1\nterminal 0\n1\n1 1\n");
    const auto r = run({"ccs", (dir / "m.txt").string(), "--verify", "--history", (dir / "h.csv").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("CCS (1 vectors)") != std::string::npos);
    CHECK(r.out.find("VERIFIED") != std::string::npos);
    const auto m = envs::load_tabular(dir / "m.txt");
    const auto rep = run_ccs(m, 1e-9, false);
    REQUIRE(rep.aols.ccs.size() == 1);
    CHECK(rep.aols.ccs[0].max_norm_distance(ValueVector({10, 10})) < 1e-9);
    CHECK(slurp(dir / "h.csv").rfind("iteration,w_1,w_2,extended,delta_max,delta_r\n", 0) == 0);
}

TEST_CASE("ccs of a bandit drops the convexly dominated arm") {
    const auto dir = scratch("ccs_bandit");
    write_text(dir / "m.txt", "1 3 2 0\ninitial 1\nterminal 0\n1\n1\n1\n1 0\n0 1\n0.4 0.4\n");
    const auto rep = run_ccs(envs::load_tabular(dir / "m.txt"), 1e-9, true);
    CHECK(rep.verified);
    CHECK(same_vector_set(rep.aols.ccs, {ValueVector({1, 0}), ValueVector({0, 1})}, 1e-9));
}

TEST_CASE("ccs verification on a random instance") {
    const auto r = run({"ccs", "--random-states", "10", "--seed", "5", "--verify"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("VERIFIED") != std::string::npos);
    CHECK(run({"ccs"}).code == kExitUsage);
}

TEST_CASE("vector-set comparison") {
    const std::vector<ValueVector> a{ValueVector({0, 1}), ValueVector({1, 0})};
    CHECK(same_vector_set(a, {ValueVector({1, 1e-9}), ValueVector({0, 1})}, 1e-6));
    CHECK_FALSE(same_vector_set(a, {ValueVector({0, 1})}, 1e-6));
    CHECK_FALSE(same_vector_set(a, {ValueVector({0, 1}), ValueVector({1, 0.1})}, 1e-6));
}

TEST_CASE("single-objective training writes an identity IORM and evaluates deterministically") {
    const auto dir = scratch("train_single");
    write_text(dir / "run.cfg", std::string(kSmallTrain) + "env.channels = 0\n");
    const auto t = run({"train", "--config", (dir / "run.cfg").string(), "--out", (dir / "run").string()});
    REQUIRE_MESSAGE(t.code == kExitOk, t.err);
    for (const char* f : {"actor.ckpt", "critic_0.ckpt", "metrics.csv", "delta_r.csv", "iorm.txt", "ccs.txt",
                          "library.txt", "config.txt", "log.txt"})
        CHECK_MESSAGE(fs::exists(dir / "run" / f), f);
    CHECK(slurp(dir / "run" / "iorm.txt") == "1\n");

    const auto one = run({"eval", (dir / "run").string(), "--episodes", "1"});
    REQUIRE(one.code == kExitOk);
    CHECK(one.out.find("± 0.000") != std::string::npos);
    CHECK(one.out.find("treasure") != std::string::npos);
    const auto a = run({"eval", (dir / "run").string(), "--episodes", "4", "--seed", "9"});
    const auto b = run({"eval", (dir / "run").string(), "--episodes", "4", "--seed", "9"});
    CHECK(a.out == b.out);
    CHECK(run({"eval", (dir / "run").string(), "--episodes", "0"}).code == kExitRuntime);
}

TEST_CASE("explain reads a run directory and warns without alternatives") {
    const auto dir = scratch("explain");
    write_text(dir / "run.cfg", kSmallTrain);
    REQUIRE(run({"train", "--config", (dir / "run.cfg").string(), "--out", (dir / "run").string()}).code == kExitOk);
    const auto e = run({"explain", (dir / "run").string()});
    REQUIRE_MESSAGE(e.code == kExitOk, e.err);
    CHECK(e.out.rfind("I aim to maximize", 0) == 0);
    CHECK(fs::exists(dir / "run" / "explanation.txt"));

    write_library(dir / "lonely.txt", {{"current", ValueVector({2, 2})}});
    const auto lonely = run({"explain", (dir / "lonely.txt").string(), "--out", (dir / "lonely_out.txt").string()});
    CHECK(lonely.code == kExitOk);
    CHECK(lonely.err.find("no alternatives") != std::string::npos);
    CHECK(slurp(dir / "lonely_out.txt") == "I aim to maximize the objective_1 and the objective_2. The objective_1 is 2 and objective_2 is 2.\n");

    write_library(dir / "pair.txt", {{"current", ValueVector({1, 5})}, {"other", ValueVector({3, 4.5})}});
    write_text(dir / "pair.cfg", "qa.0.name = speed\nqa.1.name = safety\nexplain.increment = 1\n");
    const auto pair = run({"explain", (dir / "pair.txt").string(), "--config", (dir / "pair.cfg").string(), "--out",
                           (dir / "pair_out.txt").string()});
    REQUIRE_MESSAGE(pair.code == kExitOk, pair.err);
    CHECK(slurp(dir / "pair_out.txt").find("I could increase the speed to 3") != std::string::npos);
}

TEST_CASE("a four-objective locomotion library yields contrastive blocks") {
    const auto dir = scratch("explain_loco");
    write_library(dir / "lib.txt", {{"current", ValueVector({-5.025, -4, 92.546, 0.818})},
                                    {"sequence_0", ValueVector({-8.236, -2.047, 47.501, 0.401})},
                                    {"sequence_1", ValueVector({-3.0, -6.5, 95.0, 1.2})}});
    write_text(dir / "run.cfg", "env.name = toy_locomotion\n");
    const auto e = run({"explain", (dir / "lib.txt").string(), "--config", (dir / "run.cfg").string(), "--out",
                        (dir / "out.txt").string()});
    REQUIRE_MESSAGE(e.code == kExitOk, e.err);
    const auto text = slurp(dir / "out.txt");
    CHECK(text.rfind("I aim to maximize the reward forward and the reward survive", 0) == 0);
    CHECK(text.find("I could ") != std::string::npos);
    CHECK(e.err.empty());
}

TEST_CASE("library files round-trip and reject bad rows") {
    const auto dir = scratch("library");
    const std::vector<LibraryEntry> lib{{"current", ValueVector({0.1, -2})}, {"sequence_0", ValueVector({1.0 / 3.0, 7})}};
    write_library(dir / "lib.txt", lib);
    const auto back = read_library(dir / "lib.txt");
    REQUIRE(back.size() == 2);
    CHECK(back[1].label == "sequence_0");
    CHECK(back[1].value == lib[1].value);
    write_text(dir / "bad.txt", "a 1 2\nb 1\n");
    CHECK_THROWS_AS(read_library(dir / "bad.txt"), DimensionError);
    write_text(dir / "bad2.txt", "a 1 x\n");
    CHECK_THROWS_AS(read_library(dir / "bad2.txt"), std::invalid_argument);
}

TEST_CASE("normalized scores") {
    const auto [a, b] = normalized_scores({ValueVector({1, 0})}, {ValueVector({0, 0})});
    CHECK(a == doctest::Approx(0.75));
    CHECK(b == doctest::Approx(0.25));
    const auto [c, d] = normalized_scores({ValueVector({2, 4}), ValueVector({0, 0})}, {ValueVector({1, 2})});
    CHECK(c == doctest::Approx(0.5));
    CHECK(d == doctest::Approx(0.5));
    CHECK_THROWS(normalized_scores({}, {ValueVector({1.0})}));
    CHECK_THROWS_AS(normalized_scores({ValueVector({1.0})}, {ValueVector({1, 2})}), DimensionError);
}

TEST_CASE("value table layout") {
    ValueEstimate e;
    e.mean = ValueVector({1.5, -20});
    e.stddev = ValueVector({0.25, 0});
    const auto t = format_value_table({"x", "yy"}, {"m"}, {e}, 2);
    CHECK(t == "                m\n-----------------\nx     1.50 ± 0.25\nyy  -20.00 ± 0.00\n");
    CHECK_THROWS(format_value_table({"x"}, {"m", "n"}, {e}));
}

TEST_CASE("training raises the forward reward of the locomotion task") {
    RunConfig c;
    c.env.name = "toy_locomotion";
    c.env.channels = {3};
    c.trainer.steps_per_update = 400;
    c.trainer.env_copies = 2;
    c.trainer.updates_per_objective = 12;
    c.trainer.hidden = {32, 32};
    c.trainer.learning_rate = 1e-3;
    c.trainer.termination_epsilon = 0.0;
    c.trainer.seed = 3;
    const auto factory = make_env_factory(c.env);
    const auto trained = rl::train(factory, c.trainer);
    REQUIRE_FALSE(trained.aborted);
    const auto env = factory();
    Rng rng(c.trainer.seed);
    const auto untrained = nn::GaussianPolicy::make(env->state_dim(), env->action_dim(), c.trainer.hidden, rng);
    const auto after = evaluate_returns(factory, trained.actor, 5, 11, c.trainer.gamma);
    const auto before = evaluate_returns(factory, untrained, 5, 11, c.trainer.gamma);
    MESSAGE("Rfor before " << before.mean[0] << ", after " << after.mean[0]);
    CHECK(after.mean[0] > before.mean[0] + 1.0);
}

}  // TEST_SUITE
