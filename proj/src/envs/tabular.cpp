#include "vmorl/envs/tabular.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vmorl/core/number_format.hpp"

namespace vmorl::envs {

void TabularMomdp::validate() const {
    if (states == 0 || actions == 0 || objectives == 0) throw std::invalid_argument("TabularMomdp: empty dimension");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("TabularMomdp: gamma must lie in [0,1)");
    if (transitions.size() != states * actions * states) throw std::invalid_argument("TabularMomdp: transition table size");
    if (rewards.size() != states * actions * objectives) throw std::invalid_argument("TabularMomdp: reward table size");
    if (initial.size() != states) throw std::invalid_argument("TabularMomdp: initial distribution size");
    if (terminal.size() != states) throw std::invalid_argument("TabularMomdp: terminal flag count");
    for (std::size_t s = 0; s < states; ++s)
        for (std::size_t a = 0; a < actions; ++a) {
            double sum = 0.0;
            for (double p : transition_row(s, a)) {
                if (!(p >= 0.0)) throw std::invalid_argument("TabularMomdp: negative transition probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw std::invalid_argument("TabularMomdp: transition row (" + std::to_string(s) + "," +
                                            std::to_string(a) + ") sums to " + format_exact(sum));
        }
    for (double r : rewards)
        if (!std::isfinite(r)) throw std::invalid_argument("TabularMomdp: non-finite reward");
    double sum = 0.0;
    for (double p : initial) sum += p;
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("TabularMomdp: initial distribution does not sum to 1");
}

TabularMomdp TabularMomdp::random(std::uint64_t seed, std::size_t states, std::size_t actions,
                                  std::size_t objectives, double gamma) {
    Rng rng(seed);
    TabularMomdp m;
    m.states = states;
    m.actions = actions;
    m.objectives = objectives;
    m.gamma = gamma;
    m.transitions.assign(states * actions * states, 0.0);
    m.rewards.resize(states * actions * objectives);
    std::uniform_int_distribution<std::size_t> pick(0, states - 1);
    for (std::size_t s = 0; s < states; ++s)
        for (std::size_t a = 0; a < actions; ++a) {
            const double p = uniform(rng, 0.0, 1.0);
            const std::size_t first = pick(rng), second = pick(rng);
            m.transitions[(s * actions + a) * states + first] += p;
            m.transitions[(s * actions + a) * states + second] += 1.0 - p;
        }
    for (double& r : m.rewards) r = uniform(rng, 0.0, 1.0);
    m.initial.assign(states, 0.0);
    m.initial[0] = 1.0;
    m.terminal.assign(states, false);
    return m;
}

namespace {

bool next_content_line(std::istream& is, std::string& line, std::size_t& lineno) {
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected, std::size_t lineno) {
    std::istringstream in(line);
    std::vector<double> row;
    for (std::string tok; in >> tok;) {
        try {
            row.push_back(parse_double(tok));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (row.size() != expected)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " + std::to_string(expected) +
                                    " numbers, found " + std::to_string(row.size()));
    return row;
}

}  // namespace

TabularMomdp read_tabular(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    auto need = [&](const char* what) {
        if (!next_content_line(is, line, lineno))
            throw std::invalid_argument(std::string("tabular MOMDP: unexpected end of input, wanted ") + what);
    };

    TabularMomdp m;
    need("header");
    {
        std::istringstream in(line);
        std::string g;
        if (!(in >> m.states >> m.actions >> m.objectives >> g))
            throw std::invalid_argument("line " + std::to_string(lineno) + ": header must be '<S> <A> <I> <gamma>'");
        m.gamma = parse_double(g);
    }
    need("initial distribution");
    if (line.rfind("initial", 0) != 0) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'initial'");
    m.initial = parse_row(line.substr(7), m.states, lineno);

    need("terminal list");
    if (line.rfind("terminal", 0) != 0) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'terminal'");
    {
        std::istringstream in(line.substr(8));
        std::size_t count = 0;
        in >> count;
        m.terminal.assign(m.states, false);
        for (std::size_t k = 0; k < count; ++k) {
            std::size_t s = 0;
            if (!(in >> s) || s >= m.states)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": bad terminal state index");
            m.terminal[s] = true;
        }
    }
    for (std::size_t k = 0; k < m.states * m.actions; ++k) {
        need("transition row");
        const auto row = parse_row(line, m.states, lineno);
        m.transitions.insert(m.transitions.end(), row.begin(), row.end());
    }
    for (std::size_t k = 0; k < m.states * m.actions; ++k) {
        need("reward row");
        const auto row = parse_row(line, m.objectives, lineno);
        m.rewards.insert(m.rewards.end(), row.begin(), row.end());
    }
    m.validate();
    return m;
}

void write_tabular(std::ostream& os, const TabularMomdp& m) {
    os << m.states << ' ' << m.actions << ' ' << m.objectives << ' ' << format_exact(m.gamma) << '\n';
    os << "initial";
    for (double p : m.initial) os << ' ' << format_exact(p);
    std::size_t count = 0;
    for (bool t : m.terminal) count += t ? 1 : 0;
    os << "\nterminal " << count;
    for (std::size_t s = 0; s < m.states; ++s)
        if (m.terminal[s]) os << ' ' << s;
    os << '\n';
    for (std::size_t s = 0; s < m.states; ++s)
        for (std::size_t a = 0; a < m.actions; ++a) {
            const auto row = m.transition_row(s, a);
            for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << format_exact(row[k]);
            os << '\n';
        }
    for (std::size_t s = 0; s < m.states; ++s)
        for (std::size_t a = 0; a < m.actions; ++a) {
            const auto r = m.reward(s, a);
            for (std::size_t k = 0; k < r.size(); ++k) os << (k ? " " : "") << format_exact(r[k]);
            os << '\n';
        }
}

TabularMomdp load_tabular(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    return read_tabular(is);
}

void save_tabular(const std::filesystem::path& path, const TabularMomdp& m) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_tabular(os, m);
}

namespace {
std::size_t sample_index(std::span<const double> probs, Rng& rng) {
    const double u = uniform(rng, 0.0, 1.0);
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) return k;
    }
    for (std::size_t k = probs.size(); k-- > 0;)
        if (probs[k] > 0.0) return k;
    return probs.size() - 1;
}
}  // namespace

TabularEnv::TabularEnv(TabularMomdp m, std::size_t horizon) : m_(std::move(m)), horizon_(horizon) {
    m_.validate();
    if (horizon_ == 0) throw std::invalid_argument("TabularEnv: horizon must be >= 1");
}

std::size_t TabularEnv::reset(Rng& rng) {
    state_ = sample_index(m_.initial, rng);
    t_ = 0;
    return state_;
}

DiscreteStep TabularEnv::step(std::size_t action, Rng& rng) {
    if (action >= m_.actions) throw std::out_of_range("TabularEnv::step: action " + std::to_string(action) + " out of range");
    const auto r = m_.reward(state_, action);
    DiscreteStep out;
    out.reward.assign(r.begin(), r.end());
    state_ = sample_index(m_.transition_row(state_, action), rng);
    ++t_;
    out.state = state_;
    out.done = m_.terminal[state_] || t_ >= horizon_;
    return out;
}

}  // namespace vmorl::envs
