#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vmorl/core/types.hpp"
#include "vmorl/explain/alternatives.hpp"
#include "vmorl/explain/qa.hpp"

namespace vmorl::explain {

/// "A", "A and B", "A, B, and C".
std::string join_list(const std::vector<std::string>& items);

/// Mission, plan and value sentences for the current policy, e.g.
/// "I aim to maximize the reward forward while minimizing the reward control.
///  I plan to move forward. The Rctrl is -5.025 and Rfor is 0.818."
std::string render_policy_statement(const QaSpec& qa, const ValueVector& v);

/// Gain/loss justification for not switching to `alt`. `ordinal` > 0 renders
/// "I could also ...". Throws std::invalid_argument when `alt` has no gains.
std::string render_contrastive(const QaSpec& qa, const Alternative& alt, const ValueVector& current,
                               std::size_t ordinal = 0);

/// Three-column text table: QA type, optimization objective, QA property.
std::string render_qa_table(const QaSpec& qa, const ValueVector& v);

/// Policy statement followed by one contrastive block per alternative,
/// blocks separated by blank lines, trailing newline.
std::string render_explanation(const QaSpec& qa, const ValueVector& current,
                               std::span<const Alternative> alternatives);

}  // namespace vmorl::explain
