#include "vmorl/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "vmorl/ccs/ccs.hpp"
#include "vmorl/core/number_format.hpp"
#include "vmorl/envs/planning.hpp"
#include "vmorl/explain/alternatives.hpp"
#include "vmorl/explain/render.hpp"
#include "vmorl/nn/checkpoint.hpp"

namespace vmorl::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    return os;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

std::string csv_number(double x) { return std::isfinite(x) ? format_exact(x) : (x > 0 ? "inf" : "nan"); }

void write_iorm(const fs::path& p, const Iorm& iorm) {
    auto os = open_out(p);
    for (const auto& row : iorm.rows()) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << format_exact(row[j]);
        os << '\n';
    }
}

}  // namespace

void write_library(const fs::path& path, const std::vector<LibraryEntry>& entries) {
    auto os = open_out(path);
    for (const auto& e : entries) {
        os << e.label;
        for (double v : e.value) os << ' ' << format_exact(v);
        os << '\n';
    }
}

std::vector<LibraryEntry> read_library(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::vector<LibraryEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string label;
        if (!(ls >> label) || label[0] == '#') continue;
        std::vector<double> values;
        for (std::string tok; ls >> tok;) {
            try {
                values.push_back(parse_double(tok));
            } catch (const std::exception&) {
                throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": bad value '" + tok + "'");
            }
        }
        if (values.empty())
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": entry has no values");
        if (!out.empty() && values.size() != out.front().value.size())
            throw DimensionError(path.string() + ":" + std::to_string(lineno) + ": inconsistent vector length");
        out.push_back({label, ValueVector(std::move(values))});
    }
    return out;
}

std::string format_value_table(const std::vector<std::string>& objectives, const std::vector<std::string>& columns,
                               const std::vector<ValueEstimate>& estimates, int precision) {
    if (columns.size() != estimates.size()) throw std::invalid_argument("format_value_table: column count mismatch");
    std::vector<std::vector<std::string>> cells(objectives.size() + 1);
    cells[0].push_back("");
    for (const auto& c : columns) cells[0].push_back(c);
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        cells[i + 1].push_back(objectives[i]);
        for (const auto& e : estimates) {
            if (e.mean.size() != objectives.size()) throw DimensionError("format_value_table: estimate dimension");
            std::ostringstream s;
            s << std::fixed << std::setprecision(precision) << e.mean[i] << " ± " << e.stddev[i];
            cells[i + 1].push_back(s.str());
        }
    }
    // "±" is two bytes but one column wide.
    auto width_of = [](const std::string& s) {
        std::size_t w = 0;
        for (unsigned char ch : s) w += (ch & 0xC0) != 0x80;
        return w;
    };
    std::vector<std::size_t> width(columns.size() + 1, 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], width_of(row[c]));
    std::string out;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t c = 0; c < cells[r].size(); ++c) {
            const auto pad = std::string(width[c] - width_of(cells[r][c]), ' ');
            out += c == 0 ? cells[r][c] + pad : "  " + pad + cells[r][c];
        }
        out += '\n';
        if (r == 0) {
            std::size_t total = width[0];
            for (std::size_t c = 1; c < width.size(); ++c) total += 2 + width[c];
            out += std::string(total, '-') + '\n';
        }
    }
    return out;
}

ValueEstimate evaluate_returns(const envs::EnvFactory& factory, const nn::GaussianPolicy& policy,
                               std::size_t episodes, std::uint64_t seed, double gamma) {
    const auto eps = rl::evaluate_policy(factory, policy, episodes, seed, gamma);
    std::vector<ValueVector> returns;
    for (const auto& e : eps) returns.push_back(e.undiscounted);
    return summarize_returns(returns);
}

rl::TrainResult run_training(const RunConfig& cfg, const fs::path& dir, std::ostream& progress) {
    cfg.validate();
    fs::create_directories(dir);
    auto log = open_out(dir / "log.txt");
    log << timestamp() << " start seed=" << cfg.trainer.seed << '\n';
    { open_out(dir / "config.txt") << serialize_config(cfg); }

    const auto factory = make_env_factory(cfg.env);
    const auto names = factory()->objective_names();
    const std::size_t I = names.size();

    auto metrics = open_out(dir / "metrics.csv");
    metrics << "# vmorl metrics v1\n";
    metrics << "update,objective,iteration,episodes";
    for (const auto& n : names) metrics << ",return_" << n;
    metrics << ",delta_r,delta_max,clip_fraction,approx_kl\n";
    auto delta = open_out(dir / "delta_r.csv");
    delta << "update,objective,delta_r\n";

    auto on_update = [&](const rl::UpdateMetrics& m) {
        metrics << m.update << ',' << m.objective << ',' << m.iteration << ',' << m.episodes;
        for (double r : m.mean_return) metrics << ',' << csv_number(r);
        metrics << ',' << csv_number(m.delta_r) << ',' << csv_number(m.delta_max) << ','
                << csv_number(m.clip_fraction) << ',' << csv_number(m.approx_kl) << '\n';
        delta << m.update << ',' << m.objective << ',' << csv_number(m.delta_r) << '\n';
        progress << "update " << m.update << " objective " << m.objective << " delta_r " << csv_number(m.delta_r)
                 << '\n';
        log << timestamp() << " update " << m.update << '\n';
    };
    auto result = rl::train(factory, cfg.trainer, on_update);
    metrics.flush();
    delta.flush();

    nn::save_checkpoint(dir / "actor.ckpt", result.actor);
    for (std::size_t j = 0; j < result.critics.size(); ++j)
        nn::save_checkpoint(dir / ("critic_" + std::to_string(j) + ".ckpt"), result.critics.current(j));
    write_iorm(dir / "iorm.txt", result.iorm);
    {
        auto os = open_out(dir / "ccs.txt");
        for (const auto& v : result.last_aols.ccs) {
            for (std::size_t j = 0; j < v.size(); ++j) os << (j ? " " : "") << format_exact(v[j]);
            os << '\n';
        }
    }
    if (result.aborted) {
        log << timestamp() << " aborted: " << result.error << '\n';
        throw std::runtime_error("training aborted: " + result.error + " (checkpoint written to " + dir.string() + ")");
    }

    std::vector<LibraryEntry> library;
    const std::uint64_t eval_seed = derive_seed(cfg.trainer.seed, 0xE7A1);
    for (std::size_t i = 0; i < result.sequence_actors.size(); ++i)
        library.push_back({"sequence_" + std::to_string(i),
                           evaluate_returns(factory, result.sequence_actors[i], cfg.eval_episodes, eval_seed,
                                            cfg.trainer.gamma)
                               .mean});
    const auto final_eval = evaluate_returns(factory, result.actor, cfg.eval_episodes, eval_seed, cfg.trainer.gamma);
    library.insert(library.begin(), {"current", final_eval.mean});
    write_library(dir / "library.txt", library);
    progress << format_value_table(names, {"V2f-MORL"}, {final_eval});
    log << timestamp() << " done, " << result.metrics.size() << " updates, " << I << " objectives\n";
    return result;
}

bool same_vector_set(const std::vector<ValueVector>& a, const std::vector<ValueVector>& b, double tol) {
    auto covered = [tol](const std::vector<ValueVector>& x, const std::vector<ValueVector>& y) {
        return std::all_of(x.begin(), x.end(), [&](const ValueVector& v) {
            return std::any_of(y.begin(), y.end(), [&](const ValueVector& u) { return v.max_norm_distance(u) <= tol; });
        });
    };
    return a.size() == b.size() && covered(a, b) && covered(b, a);
}

CcsReport run_ccs(const envs::TabularMomdp& m, double epsilon, bool verify, std::size_t max_iterations) {
    m.validate();
    CcsReport r;
    r.aols = ccs::aols([&m](const WeightVector& w) { return envs::value_iteration(m, w).value; }, m.objectives,
                       epsilon, max_iterations);
    if (verify) {
        r.reference = envs::enumerate_ccs(m);
        r.verified = same_vector_set(r.aols.ccs, *r.reference, std::max(epsilon, 1e-6));
    }
    return r;
}

std::pair<double, double> normalized_scores(const std::vector<ValueVector>& a, const std::vector<ValueVector>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("normalized_scores: empty episode set");
    const std::size_t I = a.front().size();
    std::vector<double> lo(I, std::numeric_limits<double>::infinity()), hi(I, -std::numeric_limits<double>::infinity());
    for (const auto* set : {&a, &b})
        for (const auto& v : *set) {
            if (v.size() != I) throw DimensionError("normalized_scores: dimension mismatch");
            for (std::size_t i = 0; i < I; ++i) {
                lo[i] = std::min(lo[i], v[i]);
                hi[i] = std::max(hi[i], v[i]);
            }
        }
    auto score = [&](const std::vector<ValueVector>& set) {
        double total = 0.0;
        for (const auto& v : set)
            for (std::size_t i = 0; i < I; ++i) total += hi[i] > lo[i] ? (v[i] - lo[i]) / (hi[i] - lo[i]) : 0.5;
        return total / static_cast<double>(set.size() * I);
    };
    return {score(a), score(b)};
}

std::size_t BenchReport::wins() const {
    return static_cast<std::size_t>(
        std::count_if(seeds.begin(), seeds.end(), [](const BenchSeed& s) { return s.morl_score > s.baseline_score; }));
}

std::string BenchReport::table() const {
    std::ostringstream os;
    for (const auto& s : seeds) {
        os << "seed " << s.seed << " (" << s.updates << " updates each)\n";
        os << format_value_table(objectives, {"Rfor-only", "V2f-MORL"}, {s.baseline, s.morl});
        os << "normalized score: Rfor-only " << std::fixed << std::setprecision(4) << s.baseline_score
           << ", V2f-MORL " << s.morl_score << (s.morl_score > s.baseline_score ? "  (V2f-MORL higher)" : "") << "\n\n";
        os.unsetf(std::ios::floatfield);
    }
    os << "V2f-MORL higher in " << wins() << "/" << seeds.size() << " seeds\n";
    return os.str();
}

BenchReport run_bench(const RunConfig& cfg, std::ostream& progress) {
    cfg.validate();
    const auto factory = make_env_factory(cfg.env);
    BenchReport report;
    report.objectives = factory()->objective_names();
    if (cfg.bench_baseline_channel >= report.objectives.size())
        throw std::invalid_argument("bench.baseline_channel is out of range");
    EnvSelection baseline_env = cfg.env;
    baseline_env.channels = cfg.env.channels.empty() ? std::vector<std::size_t>{cfg.bench_baseline_channel}
                                                     : std::vector<std::size_t>{cfg.env.channels.at(cfg.bench_baseline_channel)};
    const auto baseline_factory = make_env_factory(baseline_env);

    for (std::size_t k = 0; k < cfg.bench_seeds; ++k) {
        BenchSeed s;
        s.seed = cfg.trainer.seed + k;
        rl::TrainerConfig tc = cfg.trainer;
        tc.seed = s.seed;
        const auto morl = rl::train(factory, tc);
        if (morl.aborted) throw std::runtime_error("bench: training aborted: " + morl.error);
        s.updates = std::max<std::size_t>(1, morl.metrics.size());

        rl::TrainerConfig bc = tc;
        bc.objectives = 0;
        bc.updates_per_objective = s.updates;
        bc.termination_epsilon = 0.0;
        const auto base = rl::train(baseline_factory, bc);
        if (base.aborted) throw std::runtime_error("bench: baseline aborted: " + base.error);

        const std::uint64_t eval_seed = derive_seed(s.seed, 0xBE7C);
        auto collect = [&](const nn::GaussianPolicy& p) {
            std::vector<ValueVector> out;
            for (const auto& e : rl::evaluate_policy(factory, p, cfg.eval_episodes, eval_seed, tc.gamma))
                out.push_back(e.undiscounted);
            return out;
        };
        const auto morl_eps = collect(morl.actor);
        const auto base_eps = collect(base.actor);
        s.morl = summarize_returns(morl_eps);
        s.baseline = summarize_returns(base_eps);
        std::tie(s.morl_score, s.baseline_score) = normalized_scores(morl_eps, base_eps);
        progress << "seed " << s.seed << ": V2f-MORL " << format_exact(s.morl_score) << ", Rfor-only "
                 << format_exact(s.baseline_score) << '\n';
        report.seeds.push_back(s);
    }
    return report;
}

namespace {

RunConfig config_from(const std::string& path) { return path.empty() ? RunConfig{} : load_config(path); }

int cmd_train(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out_dir,
              std::ostream& out) {
    RunConfig cfg = config_from(config);
    if (seed) cfg.trainer.seed = *seed;
    if (!out_dir.empty()) cfg.out = out_dir;
    run_training(cfg, cfg.out, out);
    out << "run directory: " << cfg.out << '\n';
    return kExitOk;
}

int cmd_ccs(const std::string& file, std::optional<std::size_t> random_states, std::size_t random_actions,
            std::size_t random_objectives, double gamma, std::uint64_t seed, double epsilon, bool verify,
            const std::string& history, std::ostream& out) {
    envs::TabularMomdp m;
    if (!file.empty()) {
        m = envs::load_tabular(file);
    } else if (random_states) {
        m = envs::TabularMomdp::random(seed, *random_states, random_actions, random_objectives, gamma);
    } else {
        throw CLI::ValidationError("ccs", "give a MOMDP file or --random-states");
    }
    const auto report = run_ccs(m, epsilon, verify);
    out << "CCS (" << report.aols.ccs.size() << " vectors)\n";
    for (const auto& v : report.aols.ccs) {
        out << ' ';
        for (double x : v) out << ' ' << format_exact(x);
        out << '\n';
    }
    out << "delta_max " << format_exact(report.aols.delta_max) << '\n';
    out << "iterations " << report.aols.history.size() << (report.aols.hit_iteration_cap ? " (cap reached)" : "")
        << '\n';
    if (!history.empty()) {
        auto os = open_out(history);
        ccs::write_history_csv(os, report.aols);
    }
    if (verify) {
        out << (report.verified ? "VERIFIED" : "MISMATCH") << " against grid enumeration ("
            << report.reference->size() << " vectors)\n";
        return report.verified ? kExitOk : kExitRuntime;
    }
    return kExitOk;
}

int cmd_eval(const std::string& target, const std::string& config, std::optional<std::uint64_t> seed,
             std::optional<std::size_t> episodes, std::ostream& out) {
    fs::path actor = target;
    std::string cfg_path = config;
    if (fs::is_directory(target)) {
        actor = fs::path(target) / "actor.ckpt";
        if (cfg_path.empty() && fs::exists(fs::path(target) / "config.txt")) cfg_path = (fs::path(target) / "config.txt").string();
    }
    RunConfig cfg = config_from(cfg_path);
    if (seed) cfg.trainer.seed = *seed;
    if (episodes) cfg.eval_episodes = *episodes;
    if (cfg.eval_episodes == 0) throw std::invalid_argument("--episodes must be >= 1");
    const auto policy = nn::load_policy_checkpoint(actor);
    const auto factory = make_env_factory(cfg.env);
    const auto names = factory()->objective_names();
    const auto est = evaluate_returns(factory, policy, cfg.eval_episodes, derive_seed(cfg.trainer.seed, 0xE7A1),
                                      cfg.trainer.gamma);
    out << format_value_table(names, {"policy"}, {est});
    return kExitOk;
}

explain::ExplainConfig explain_config(const RunConfig& cfg, const explain::QaSpec& qa,
                                      const std::vector<LibraryEntry>& pool) {
    const std::size_t I = qa.size();
    auto broadcast = [I](auto values, const char* key) {
        if (values.size() == 1) values.assign(I, values.front());
        if (values.size() != I)
            throw std::invalid_argument(std::string(key) + " needs 1 or " + std::to_string(I) + " entries");
        return values;
    };
    std::vector<double> lo(I, std::numeric_limits<double>::infinity()), hi(I, -std::numeric_limits<double>::infinity());
    for (const auto& e : pool) {
        const auto u = explain::utility(qa, e.value);
        for (std::size_t i = 0; i < I; ++i) {
            lo[i] = std::min(lo[i], u[i]);
            hi[i] = std::max(hi[i], u[i]);
        }
    }
    explain::ExplainConfig ec;
    if (cfg.explain_increment.empty()) {
        for (std::size_t i = 0; i < I; ++i) ec.increment.push_back(std::max((hi[i] - lo[i]) / 10.0, 1e-6));
    } else {
        ec.increment = broadcast(cfg.explain_increment, "explain.increment");
    }
    ec.max_value = cfg.explain_max_value.empty() ? hi : broadcast(cfg.explain_max_value, "explain.max_value");
    ec.max_count = broadcast(cfg.explain_max_count, "explain.max_count");
    ec.validate(I);
    return ec;
}

int cmd_explain(const std::vector<std::string>& sources, const std::string& config, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
    std::vector<LibraryEntry> pool;
    std::string cfg_path = config;
    fs::path default_out = "explanation.txt";
    for (std::size_t k = 0; k < sources.size(); ++k) {
        fs::path lib = sources[k];
        if (fs::is_directory(lib)) {
            if (k == 0) {
                default_out = lib / "explanation.txt";
                if (cfg_path.empty() && fs::exists(lib / "config.txt")) cfg_path = (lib / "config.txt").string();
            }
            lib /= "library.txt";
        }
        const auto entries = read_library(lib);
        pool.insert(pool.end(), entries.begin(), entries.end());
    }
    if (pool.empty()) throw std::runtime_error("explain: the value library is empty");
    const RunConfig cfg = config_from(cfg_path);
    explain::QaSpec qa;
    if (!cfg_path.empty() || !cfg.qa.entries.empty()) qa = resolve_qa(cfg);
    if (qa.size() != pool.front().value.size()) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < pool.front().value.size(); ++i) names.push_back("objective_" + std::to_string(i + 1));
        qa = explain::default_qa(names);
    }
    for (const auto& e : pool)
        if (e.value.size() != qa.size()) throw DimensionError("explain: library vectors differ in length");

    const auto current_it = std::find_if(pool.begin(), pool.end(), [](const LibraryEntry& e) { return e.label == "current"; });
    const ValueVector current = current_it != pool.end() ? current_it->value : pool.front().value;
    std::vector<ValueVector> values;
    for (const auto& e : pool) values.push_back(e.value);
    const auto dirs = explain::directions(qa);
    const auto alternatives = explain::generate_alternatives(values, current, explain_config(cfg, qa, pool), dirs);
    if (alternatives.empty()) err << "warning: no alternatives\n";
    const std::string text = explain::render_explanation(qa, current, alternatives);
    const fs::path target = out_path.empty() ? default_out : fs::path(out_path);
    open_out(target) << text;
    out << text << "written to " << target.string() << '\n';
    return kExitOk;
}

int cmd_bench(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out_dir,
              std::ostream& out) {
    RunConfig cfg = config_from(config);
    if (config.empty()) {
        cfg.env.name = "toy_locomotion";
        cfg.trainer.steps_per_update = 1024;
        cfg.trainer.env_copies = 4;
    }
    if (seed) cfg.trainer.seed = *seed;
    const auto report = run_bench(cfg, out);
    const std::string table = report.table();
    out << table;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        open_out(fs::path(out_dir) / "bench.txt") << table;
        auto csv = open_out(fs::path(out_dir) / "bench.csv");
        csv << "seed,updates,morl_score,baseline_score\n";
        for (const auto& s : report.seeds)
            csv << s.seed << ',' << s.updates << ',' << format_exact(s.morl_score) << ','
                << format_exact(s.baseline_score) << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-objective actor-critic training, CCS solving and trade-off explanations", "vmorl"};
    app.require_subcommand(1);

    std::string config, out_dir, file, history;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> episodes, random_states;
    std::size_t random_actions = 3, random_objectives = 2;
    double gamma = 0.9, epsilon = 1e-6;
    bool verify = false;
    std::vector<std::string> sources;

    auto* train = app.add_subcommand("train", "train a policy and write a run directory");
    train->add_option("--config", config, "key=value configuration file");
    train->add_option("--seed", seed, "override trainer.seed");
    train->add_option("--out", out_dir, "run directory (overrides run.out)");

    auto* ccs_cmd = app.add_subcommand("ccs", "solve the convex coverage set of a tabular MOMDP");
    ccs_cmd->add_option("file", file, "tabular MOMDP file");
    ccs_cmd->add_option("--random-states", random_states, "generate a random instance with this many states");
    ccs_cmd->add_option("--random-actions", random_actions, "actions of the random instance")->check(CLI::PositiveNumber);
    ccs_cmd->add_option("--random-objectives", random_objectives, "objectives of the random instance")
        ->check(CLI::PositiveNumber);
    ccs_cmd->add_option("--gamma", gamma, "discount of the random instance");
    ccs_cmd->add_option("--seed", seed, "seed of the random instance");
    ccs_cmd->add_option("--epsilon", epsilon, "AOLS improvement threshold");
    ccs_cmd->add_flag("--verify", verify, "cross-check against grid enumeration");
    ccs_cmd->add_option("--history", history, "write per-iteration delta_max / delta_r to this CSV");

    auto* eval = app.add_subcommand("eval", "evaluate a trained policy with mean actions");
    eval->add_option("target", file, "run directory or actor checkpoint")->required();
    eval->add_option("--config", config, "configuration (defaults to the run directory's config.txt)");
    eval->add_option("--seed", seed, "evaluation seed");
    eval->add_option("--episodes", episodes, "number of episodes");

    auto* expl = app.add_subcommand("explain", "write a trade-off explanation from value libraries");
    expl->add_option("sources", sources, "run directories or library files")->required();
    expl->add_option("--config", config, "configuration holding the QA vocabulary");
    expl->add_option("--out", out_dir, "explanation file");

    auto* bench = app.add_subcommand("bench", "multi-objective training versus a single-channel baseline");
    bench->add_option("--config", config, "configuration file");
    bench->add_option("--seed", seed, "first seed");
    bench->add_option("--out", out_dir, "directory for bench.txt and bench.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run 'vmorl --help' for usage\n";
        return kExitUsage;
    }

    try {
        if (*train) return cmd_train(config, seed, out_dir, out);
        if (*ccs_cmd)
            return cmd_ccs(file, random_states, random_actions, random_objectives, gamma, seed.value_or(0), epsilon,
                           verify, history, out);
        if (*eval) return cmd_eval(file, config, seed, episodes, out);
        if (*expl) return cmd_explain(sources, config, out_dir, out, err);
        if (*bench) return cmd_bench(config, seed, out_dir, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace vmorl::cli
