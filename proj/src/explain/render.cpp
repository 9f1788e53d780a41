#include "vmorl/explain/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace vmorl::explain {

std::string join_list(const std::vector<std::string>& items) {
    switch (items.size()) {
        case 0: return "";
        case 1: return items[0];
        case 2: return items[0] + " and " + items[1];
        default: {
            std::string s;
            for (std::size_t k = 0; k + 1 < items.size(); ++k) s += items[k] + ", ";
            return s + "and " + items.back();
        }
    }
}

namespace {

std::string value_of(const QaSpec& qa, std::size_t i, double v) { return format_value(v, qa.entries[i].precision); }

std::vector<std::string> phrases(const QaSpec& qa, Direction d) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < qa.size(); ++i)
        if (qa.entries[i].direction == d) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return qa.entries[a].rank < qa.entries[b].rank; });
    std::vector<std::string> out;
    for (std::size_t i : idx) out.push_back("the " + qa.entries[i].phrase);
    return out;
}

// Numeric direction of a change, independent of whether it helps.
bool rises(const QaSpec& qa, const Change& c) {
    return qa.entries[c.objective].direction == Direction::maximize ? c.delta > 0.0 : c.delta < 0.0;
}

double raw_magnitude(const Change& c) { return std::abs(c.delta); }

}  // namespace

std::string render_policy_statement(const QaSpec& qa, const ValueVector& v) {
    qa.validate(v);
    const auto maxi = phrases(qa, Direction::maximize);
    const auto mini = phrases(qa, Direction::minimize);
    std::string s = "I aim to ";
    if (!maxi.empty()) {
        s += "maximize " + join_list(maxi);
        if (!mini.empty()) s += " while minimizing " + join_list(mini);
    } else {
        s += "minimize " + join_list(mini);
    }
    s += ".";
    if (!qa.plan.empty()) s += " I plan to " + qa.plan + ".";
    std::vector<std::string> clauses;
    for (std::size_t i = 0; i < v.size(); ++i) clauses.push_back(qa.entries[i].name + " is " + value_of(qa, i, v[i]));
    s += " The " + join_list(clauses) + ".";
    return s;
}

std::string render_contrastive(const QaSpec& qa, const Alternative& alt, const ValueVector& current,
                               std::size_t ordinal) {
    qa.validate(current);
    if (alt.achieved.size() != current.size()) throw DimensionError("render_contrastive: alternative dimension");
    if (alt.gains.empty()) throw std::invalid_argument("render_contrastive: alternative improves nothing");

    std::vector<std::string> improved, gain_nouns;
    for (const auto& g : alt.gains) {
        const auto& e = qa.entries[g.objective];
        const std::string verb = rises(qa, g) ? "increase" : "decrease";
        improved.push_back(verb + " the " + e.name + " to " + value_of(qa, g.objective, alt.achieved[g.objective]));
        gain_nouns.push_back("the " + verb + " in the " + e.name);
    }
    std::string s = ordinal > 0 ? "I could also " : "I could ";
    s += join_list(improved) + ", by " + qa.alternative + " instead.";
    if (alt.losses.empty()) {
        s += " This alternative does not worsen any other QA.";
        return s;
    }
    std::vector<std::string> worsened, loss_nouns;
    for (const auto& l : alt.losses) {
        const auto& e = qa.entries[l.objective];
        const std::string verb = rises(qa, l) ? "increase" : "decrease";
        worsened.push_back(verb + " the " + e.name + " by " + value_of(qa, l.objective, raw_magnitude(l)));
        loss_nouns.push_back("the " + verb + " of the " + e.name);
    }
    s += " However, this would " + join_list(worsened) + ".";
    s += " I decided not to do that because " + join_list(gain_nouns) + " is not worth " + join_list(loss_nouns) + ".";
    return s;
}

std::string render_qa_table(const QaSpec& qa, const ValueVector& v) {
    qa.validate(v);
    std::vector<std::array<std::string, 3>> rows{{"QA Type", "Optimization Objective", "QA Property"}};
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& e = qa.entries[i];
        rows.push_back({e.qa_type, "\"" + to_string(e.direction) + " the " + e.phrase + "\"",
                        "\"the expected " + e.name + " is " + value_of(qa, i, v[i]) + "\""});
    }
    std::array<std::size_t, 3> width{};
    for (const auto& r : rows)
        for (std::size_t c = 0; c < 3; ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::array<std::string, 3>& r) {
        std::string s;
        for (std::size_t c = 0; c < 3; ++c) {
            s += r[c];
            if (c < 2) s += std::string(width[c] - r[c].size(), ' ') + " | ";
        }
        return s + "\n";
    };
    const std::string rule = std::string(width[0], '-') + "-+-" + std::string(width[1], '-') + "-+-" +
                             std::string(width[2], '-') + "\n";
    std::string out = line(rows[0]) + rule;
    for (std::size_t k = 1; k < rows.size(); ++k) out += line(rows[k]);
    return out;
}

std::string render_explanation(const QaSpec& qa, const ValueVector& current,
                               std::span<const Alternative> alternatives) {
    std::string out = render_policy_statement(qa, current) + "\n";
    for (std::size_t k = 0; k < alternatives.size(); ++k)
        out += "\n" + render_contrastive(qa, alternatives[k], current, k) + "\n";
    return out;
}

}  // namespace vmorl::explain
