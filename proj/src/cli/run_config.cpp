#include "vmorl/cli/run_config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vmorl/core/number_format.hpp"
#include "vmorl/envs/tabular.hpp"

namespace vmorl::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

std::size_t parse_size(const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("expected a non-negative integer, got '" + v + "'");
    std::size_t pos = 0;
    const auto x = std::stoull(v, &pos);
    return static_cast<std::size_t>(x);
}

std::uint64_t parse_u64(const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("expected a non-negative integer, got '" + v + "'");
    return std::stoull(v);
}

int parse_int(const std::string& v) {
    std::size_t pos = 0;
    int x = 0;
    try {
        x = std::stoi(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) throw std::invalid_argument("expected an integer, got '" + v + "'");
    return x;
}

std::vector<std::size_t> parse_sizes(const std::string& v) {
    std::vector<std::size_t> out;
    for (const auto& s : split(v, ',')) out.push_back(parse_size(s));
    return out;
}

std::vector<double> parse_doubles(const std::string& v) {
    std::vector<double> out;
    for (const auto& s : split(v, ',')) out.push_back(parse_double(s));
    return out;
}

std::vector<envs::Treasure> parse_treasures(const std::string& v) {
    std::vector<envs::Treasure> out;
    for (const auto& item : split(v, ';')) {
        const auto parts = split(item, ':');
        if (parts.size() != 3) throw std::invalid_argument("treasure must be row:col:value, got '" + item + "'");
        out.push_back({parse_size(parts[0]), parse_size(parts[1]), parse_double(parts[2])});
    }
    return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, const std::string& sep, F&& fmt) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) s += sep;
        s += fmt(xs[k]);
    }
    return s;
}

std::string fmt_sizes(const std::vector<std::size_t>& xs) {
    return join(xs, ",", [](std::size_t x) { return std::to_string(x); });
}
std::string fmt_doubles(const std::vector<double>& xs) { return join(xs, ",", [](double x) { return format_exact(x); }); }

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"trainer.clip", [](RunConfig& c, const std::string& v) { c.trainer.clip = parse_double(v); }},
        {"trainer.gamma", [](RunConfig& c, const std::string& v) { c.trainer.gamma = parse_double(v); }},
        {"trainer.lambda", [](RunConfig& c, const std::string& v) { c.trainer.lambda = parse_double(v); }},
        {"trainer.steps_per_update", [](RunConfig& c, const std::string& v) { c.trainer.steps_per_update = parse_size(v); }},
        {"trainer.env_copies", [](RunConfig& c, const std::string& v) { c.trainer.env_copies = parse_size(v); }},
        {"trainer.epochs", [](RunConfig& c, const std::string& v) { c.trainer.epochs = parse_size(v); }},
        {"trainer.minibatch", [](RunConfig& c, const std::string& v) { c.trainer.minibatch = parse_size(v); }},
        {"trainer.learning_rate", [](RunConfig& c, const std::string& v) { c.trainer.learning_rate = parse_double(v); }},
        {"trainer.aols_epsilon", [](RunConfig& c, const std::string& v) { c.trainer.aols_epsilon = parse_double(v); }},
        {"trainer.aols_max_iterations", [](RunConfig& c, const std::string& v) { c.trainer.aols_max_iterations = parse_size(v); }},
        {"trainer.termination_epsilon", [](RunConfig& c, const std::string& v) { c.trainer.termination_epsilon = parse_double(v); }},
        {"trainer.objectives", [](RunConfig& c, const std::string& v) { c.trainer.objectives = parse_size(v); }},
        {"trainer.updates_per_objective", [](RunConfig& c, const std::string& v) { c.trainer.updates_per_objective = parse_size(v); }},
        {"trainer.hidden", [](RunConfig& c, const std::string& v) { c.trainer.hidden = parse_sizes(v); }},
        {"trainer.seed", [](RunConfig& c, const std::string& v) { c.trainer.seed = parse_u64(v); }},
        {"env.name", [](RunConfig& c, const std::string& v) { c.env.name = v; }},
        {"env.channels", [](RunConfig& c, const std::string& v) { c.env.channels = parse_sizes(v); }},
        {"env.grid.rows", [](RunConfig& c, const std::string& v) { c.env.grid.rows = parse_size(v); }},
        {"env.grid.cols", [](RunConfig& c, const std::string& v) { c.env.grid.cols = parse_size(v); }},
        {"env.grid.treasures", [](RunConfig& c, const std::string& v) { c.env.grid.treasures = parse_treasures(v); }},
        {"env.grid.time_penalty", [](RunConfig& c, const std::string& v) { c.env.grid.time_penalty = parse_double(v); }},
        {"env.grid.horizon", [](RunConfig& c, const std::string& v) { c.env.grid.horizon = parse_size(v); }},
        {"env.grid.start_row", [](RunConfig& c, const std::string& v) { c.env.grid.start_row = parse_size(v); }},
        {"env.grid.start_col", [](RunConfig& c, const std::string& v) { c.env.grid.start_col = parse_size(v); }},
        {"env.loco.half_width", [](RunConfig& c, const std::string& v) { c.env.loco.half_width = parse_double(v); }},
        {"env.loco.survive_bonus", [](RunConfig& c, const std::string& v) { c.env.loco.survive_bonus = parse_double(v); }},
        {"env.loco.horizon", [](RunConfig& c, const std::string& v) { c.env.loco.horizon = parse_size(v); }},
        {"env.loco.init_noise", [](RunConfig& c, const std::string& v) { c.env.loco.init_noise = parse_double(v); }},
        {"env.loco.corner_limit", [](RunConfig& c, const std::string& v) { c.env.loco.corner_limit = parse_size(v); }},
        {"env.tabular.path", [](RunConfig& c, const std::string& v) { c.env.tabular_path = v; }},
        {"env.tabular.horizon", [](RunConfig& c, const std::string& v) { c.env.tabular_horizon = parse_size(v); }},
        {"eval.episodes", [](RunConfig& c, const std::string& v) { c.eval_episodes = parse_size(v); }},
        {"bench.seeds", [](RunConfig& c, const std::string& v) { c.bench_seeds = parse_size(v); }},
        {"bench.baseline_channel", [](RunConfig& c, const std::string& v) { c.bench_baseline_channel = parse_size(v); }},
        {"explain.increment", [](RunConfig& c, const std::string& v) { c.explain_increment = parse_doubles(v); }},
        {"explain.max_value", [](RunConfig& c, const std::string& v) { c.explain_max_value = parse_doubles(v); }},
        {"explain.max_count", [](RunConfig& c, const std::string& v) { c.explain_max_count = parse_sizes(v); }},
        {"qa.plan", [](RunConfig& c, const std::string& v) { c.qa.plan = v; }},
        {"qa.alternative", [](RunConfig& c, const std::string& v) { c.qa.alternative = v; }},
        {"run.out", [](RunConfig& c, const std::string& v) { c.out = v; }},
    };
    return table;
}

// qa.<k>.<field>
bool set_qa_entry(RunConfig& c, const std::string& key, const std::string& v) {
    if (key.rfind("qa.", 0) != 0) return false;
    const auto dot = key.find('.', 3);
    if (dot == std::string::npos) return false;
    const std::string index = key.substr(3, dot - 3);
    if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos) return false;
    const std::size_t k = parse_size(index);
    if (k > 64) throw std::invalid_argument("QA index " + index + " is out of range");
    const std::string field = key.substr(dot + 1);
    if (c.qa.entries.size() <= k) c.qa.entries.resize(k + 1);
    auto& e = c.qa.entries[k];
    if (field == "name") e.name = v;
    else if (field == "type") e.qa_type = v;
    else if (field == "direction") e.direction = explain::parse_direction(v);
    else if (field == "phrase") e.phrase = v;
    else if (field == "precision") e.precision = parse_int(v);
    else if (field == "rank") e.rank = parse_int(v);
    else return false;
    return true;
}

}  // namespace

void RunConfig::validate() const {
    trainer.validate();
    if (env.name != "treasure_grid" && env.name != "toy_locomotion" && env.name != "tabular")
        throw std::invalid_argument("env.name must be treasure_grid, toy_locomotion or tabular, got '" + env.name + "'");
    if (env.name == "treasure_grid") env.grid.validate();
    if (env.name == "toy_locomotion") env.loco.validate();
    if (env.name == "tabular" && env.tabular_path.empty()) throw std::invalid_argument("env.tabular.path is required");
    if (env.tabular_horizon == 0) throw std::invalid_argument("env.tabular.horizon must be >= 1");
    if (eval_episodes == 0) throw std::invalid_argument("eval.episodes must be >= 1");
    if (bench_seeds == 0) throw std::invalid_argument("bench.seeds must be >= 1");
    for (double x : explain_increment)
        if (!(x > 0.0)) throw std::invalid_argument("explain.increment entries must be positive");
    for (std::size_t m : explain_max_count)
        if (m == 0) throw std::invalid_argument("explain.max_count entries must be >= 1");
    if (!qa.entries.empty()) qa.validate();
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto where = source + ":" + std::to_string(lineno) + ": ";
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw std::invalid_argument(where + "expected key=value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        try {
            const auto& table = setters();
            if (auto it = table.find(key); it != table.end())
                it->second(cfg, value);
            else if (!set_qa_entry(cfg, key, value))
                throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::exception& e) {
            throw std::invalid_argument(where + e.what());
        }
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument(source + ": " + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    auto kv = [&](const std::string& k, const std::string& v) { os << k << '=' << v << '\n'; };
    const auto& t = c.trainer;
    kv("trainer.clip", format_exact(t.clip));
    kv("trainer.gamma", format_exact(t.gamma));
    kv("trainer.lambda", format_exact(t.lambda));
    kv("trainer.steps_per_update", std::to_string(t.steps_per_update));
    kv("trainer.env_copies", std::to_string(t.env_copies));
    kv("trainer.epochs", std::to_string(t.epochs));
    kv("trainer.minibatch", std::to_string(t.minibatch));
    kv("trainer.learning_rate", format_exact(t.learning_rate));
    kv("trainer.aols_epsilon", format_exact(t.aols_epsilon));
    kv("trainer.aols_max_iterations", std::to_string(t.aols_max_iterations));
    kv("trainer.termination_epsilon", format_exact(t.termination_epsilon));
    kv("trainer.objectives", std::to_string(t.objectives));
    kv("trainer.updates_per_objective", std::to_string(t.updates_per_objective));
    kv("trainer.hidden", fmt_sizes(t.hidden));
    kv("trainer.seed", std::to_string(t.seed));
    kv("env.name", c.env.name);
    kv("env.channels", fmt_sizes(c.env.channels));
    kv("env.grid.rows", std::to_string(c.env.grid.rows));
    kv("env.grid.cols", std::to_string(c.env.grid.cols));
    kv("env.grid.treasures", join(c.env.grid.treasures, ";", [](const envs::Treasure& tr) {
           return std::to_string(tr.row) + ":" + std::to_string(tr.col) + ":" + format_exact(tr.value);
       }));
    kv("env.grid.time_penalty", format_exact(c.env.grid.time_penalty));
    kv("env.grid.horizon", std::to_string(c.env.grid.horizon));
    kv("env.grid.start_row", std::to_string(c.env.grid.start_row));
    kv("env.grid.start_col", std::to_string(c.env.grid.start_col));
    kv("env.loco.half_width", format_exact(c.env.loco.half_width));
    kv("env.loco.survive_bonus", format_exact(c.env.loco.survive_bonus));
    kv("env.loco.horizon", std::to_string(c.env.loco.horizon));
    kv("env.loco.init_noise", format_exact(c.env.loco.init_noise));
    kv("env.loco.corner_limit", std::to_string(c.env.loco.corner_limit));
    kv("env.tabular.path", c.env.tabular_path);
    kv("env.tabular.horizon", std::to_string(c.env.tabular_horizon));
    kv("eval.episodes", std::to_string(c.eval_episodes));
    kv("bench.seeds", std::to_string(c.bench_seeds));
    kv("bench.baseline_channel", std::to_string(c.bench_baseline_channel));
    kv("explain.increment", fmt_doubles(c.explain_increment));
    kv("explain.max_value", fmt_doubles(c.explain_max_value));
    kv("explain.max_count", fmt_sizes(c.explain_max_count));
    kv("qa.plan", c.qa.plan);
    kv("qa.alternative", c.qa.alternative);
    for (std::size_t k = 0; k < c.qa.entries.size(); ++k) {
        const auto& e = c.qa.entries[k];
        const std::string p = "qa." + std::to_string(k) + ".";
        kv(p + "name", e.name);
        kv(p + "type", e.qa_type);
        kv(p + "direction", explain::to_string(e.direction));
        kv(p + "phrase", e.phrase);
        kv(p + "precision", std::to_string(e.precision));
        kv(p + "rank", std::to_string(e.rank));
    }
    kv("run.out", c.out);
    return os.str();
}

envs::EnvFactory make_env_factory(const EnvSelection& sel) {
    envs::EnvFactory base;
    if (sel.name == "treasure_grid") {
        const auto grid = sel.grid;
        base = [grid] { return std::make_unique<envs::ArgmaxAdapter>(std::make_unique<envs::TreasureGrid>(grid)); };
    } else if (sel.name == "toy_locomotion") {
        const auto loco = sel.loco;
        base = [loco] { return std::make_unique<envs::ToyLocomotion>(loco); };
    } else if (sel.name == "tabular") {
        auto model = std::make_shared<const envs::TabularMomdp>(envs::load_tabular(sel.tabular_path));
        const std::size_t horizon = sel.tabular_horizon;
        base = [model, horizon] {
            return std::make_unique<envs::ArgmaxAdapter>(std::make_unique<envs::TabularEnv>(*model, horizon));
        };
    } else {
        throw std::invalid_argument("unknown environment '" + sel.name + "'");
    }
    if (sel.channels.empty()) return base;
    const auto channels = sel.channels;
    return [base, channels] { return std::make_unique<envs::ChannelSelect>(base(), channels); };
}

explain::QaSpec resolve_qa(const RunConfig& cfg) {
    explain::QaSpec qa;
    if (!cfg.qa.entries.empty()) {
        qa = cfg.qa;
    } else {
        const auto names = make_env_factory(cfg.env)()->objective_names();
        if (cfg.env.name == "toy_locomotion" && names.size() == 4) {
            qa = explain::locomotion_qa();
        } else {
            qa = explain::default_qa(names);
        }
        if (!cfg.qa.plan.empty()) qa.plan = cfg.qa.plan;
        if (cfg.qa.alternative != explain::QaSpec{}.alternative) qa.alternative = cfg.qa.alternative;
    }
    qa.validate();
    return qa;
}

}  // namespace vmorl::cli
