#include "vmorl/explain/qa.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace vmorl::explain {

std::string to_string(Direction d) { return d == Direction::maximize ? "maximize" : "minimize"; }

Direction parse_direction(const std::string& text) {
    if (text == "maximize") return Direction::maximize;
    if (text == "minimize") return Direction::minimize;
    throw std::invalid_argument("unknown optimization direction '" + text + "' (expected maximize or minimize)");
}

void QaSpec::validate() const {
    if (entries.empty()) throw std::invalid_argument("QaSpec: at least one quality attribute is required");
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (e.name.empty()) throw std::invalid_argument("QaSpec: empty attribute name");
        if (!seen.insert(e.name).second) throw std::invalid_argument("QaSpec: duplicate attribute name '" + e.name + "'");
        if (e.precision < 0 || e.precision > 12)
            throw std::invalid_argument("QaSpec: precision for '" + e.name + "' must lie in [0, 12]");
    }
}

void QaSpec::validate(const ValueVector& values) const {
    validate();
    if (values.size() != entries.size())
        throw DimensionError("QaSpec has " + std::to_string(entries.size()) + " attributes but the value vector has " +
                             std::to_string(values.size()) + " entries");
}

QaSpec locomotion_qa() {
    QaSpec qa;
    qa.entries = {
        {"Rctrl", "Standard measurement", Direction::minimize, "reward control", 3, 2},
        {"Rcont", "Standard measurement", Direction::minimize, "reward contact", 3, 3},
        {"Rsurv", "Standard measurement", Direction::maximize, "reward survive", 3, 1},
        {"Rfor", "Standard measurement", Direction::maximize, "reward forward", 3, 0},
    };
    qa.plan = "move forward";
    qa.alternative = "move forward in another set of actions";
    return qa;
}

QaSpec default_qa(const std::vector<std::string>& names) {
    QaSpec qa;
    int rank = 0;
    for (const auto& n : names) qa.entries.push_back({n, "Standard measurement", Direction::maximize, n, 3, rank++});
    return qa;
}

std::string format_value(double v, int precision) {
    if (!std::isfinite(v)) throw std::invalid_argument("format_value: non-finite value");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

std::vector<double> utility(const QaSpec& qa, const ValueVector& v) {
    if (qa.size() != v.size()) throw DimensionError("utility: QaSpec and value vector sizes differ");
    std::vector<double> u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = qa.entries[i].direction == Direction::maximize ? v[i] : -v[i];
    return u;
}

std::vector<Direction> directions(const QaSpec& qa) {
    std::vector<Direction> d;
    for (const auto& e : qa.entries) d.push_back(e.direction);
    return d;
}

}  // namespace vmorl::explain
