#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vmorl/core/types.hpp"

namespace vmorl::explain {

enum class Direction { maximize, minimize };

std::string to_string(Direction d);
/// Accepts "maximize" or "minimize"; throws std::invalid_argument otherwise.
Direction parse_direction(const std::string& text);

struct QaEntry {
    std::string name;                            // short label, e.g. "Rfor"
    std::string qa_type = "Standard measurement";
    Direction direction = Direction::maximize;
    std::string phrase;                          // e.g. "reward forward"
    int precision = 3;                           // decimal places before trimming
    int rank = 0;                                // mention order inside the mission sentence
};

/// Vocabulary for the quality attributes of one problem, one entry per objective.
struct QaSpec {
    std::vector<QaEntry> entries;
    std::string plan;         // "move forward" -> "I plan to move forward."; empty drops the sentence
    std::string alternative = "following an alternative policy";

    std::size_t size() const { return entries.size(); }
    /// Throws std::invalid_argument when empty, on duplicate or empty names,
    /// or on a precision outside [0, 12].
    void validate() const;
    /// validate() plus a dimension check against `values`.
    void validate(const ValueVector& values) const;
};

/// The four locomotion channels (Rctrl, Rcont, Rsurv, Rfor) with Rctrl and
/// Rcont minimized.
QaSpec locomotion_qa();

/// Generic vocabulary: objective names as given, every objective maximized.
QaSpec default_qa(const std::vector<std::string>& names);

/// Fixed-point with `precision` decimals, trailing zeros and a bare '.'
/// removed, and negative zero printed as "0".
std::string format_value(double v, int precision);

/// Values with minimize-direction entries negated, so larger is always better.
std::vector<double> utility(const QaSpec& qa, const ValueVector& v);
std::vector<Direction> directions(const QaSpec& qa);

}  // namespace vmorl::explain
