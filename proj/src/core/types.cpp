#include "vmorl/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vmorl {

ValueVector::ValueVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("ValueVector: no objectives");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("ValueVector: non-finite entry");
}

ValueVector::ValueVector(std::initializer_list<double> values)
    : ValueVector(std::vector<double>(values)) {}

ValueVector ValueVector::zeros(std::size_t objectives) {
    return ValueVector(std::vector<double>(objectives, 0.0));
}

double ValueVector::max_norm_distance(const ValueVector& other) const {
    if (size() != other.size()) throw DimensionError("ValueVector: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i) d = std::max(d, std::abs(values_[i] - other.values_[i]));
    return d;
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("WeightVector: empty");
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0.0)
            throw std::invalid_argument("WeightVector: entries must be finite and non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance)
        throw std::invalid_argument("WeightVector: entries must sum to 1");
}

WeightVector::WeightVector(std::initializer_list<double> weights)
    : WeightVector(std::vector<double>(weights)) {}

WeightVector WeightVector::unit(std::size_t dims, std::size_t k) {
    if (k >= dims) throw std::out_of_range("WeightVector::unit: index out of range");
    std::vector<double> w(dims, 0.0);
    w[k] = 1.0;
    return WeightVector(std::move(w));
}

WeightVector WeightVector::uniform(std::size_t dims) {
    return normalized(std::vector<double>(dims, 1.0));
}

WeightVector WeightVector::normalized(std::vector<double> raw) {
    double sum = 0.0;
    for (double& w : raw) {
        if (w < 0.0) {
            if (w < -1e-6) throw std::invalid_argument("WeightVector::normalized: negative entry");
            w = 0.0;
        }
        sum += w;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("WeightVector::normalized: zero mass");
    for (double& w : raw) w /= sum;
    return WeightVector(std::move(raw));
}

double WeightVector::dot(const ValueVector& v) const {
    return scalarize(*this, v.values());
}

double WeightVector::max_norm_distance(const WeightVector& other) const {
    if (size() != other.size()) throw DimensionError("WeightVector: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i) d = std::max(d, std::abs(weights_[i] - other.weights_[i]));
    return d;
}

double WeightVector::entropy() const {
    double h = 0.0;
    for (double w : weights_)
        if (w > 0.0) h -= w * std::log(w);
    return h;
}

bool WeightVector::is_extremum() const {
    return std::any_of(weights_.begin(), weights_.end(),
                       [](double w) { return std::abs(w - 1.0) <= kSimplexTolerance; });
}

Iorm::Iorm(std::vector<WeightVector> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("Iorm: empty");
    for (const auto& r : rows_)
        if (r.size() != rows_.size()) throw DimensionError("Iorm: matrix must be square");
}

Iorm Iorm::identity(std::size_t objectives) {
    std::vector<WeightVector> rows;
    rows.reserve(objectives);
    for (std::size_t i = 0; i < objectives; ++i) rows.push_back(WeightVector::unit(objectives, i));
    return Iorm(std::move(rows));
}

Iorm Iorm::with_row(std::size_t i, WeightVector row) const {
    if (i >= size()) throw std::out_of_range("Iorm::with_row: row index out of range");
    if (row.size() != size()) throw DimensionError("Iorm::with_row: row length mismatch");
    auto rows = rows_;
    rows[i] = std::move(row);
    return Iorm(std::move(rows));
}

ValueVector proxy_values(const Iorm& iorm, const ValueVector& values) {
    if (iorm.size() != values.size()) throw DimensionError("proxy_values: IORM is " +
        std::to_string(iorm.size()) + "x" + std::to_string(iorm.size()) +
        " but value vector has length " + std::to_string(values.size()));
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& row : iorm.rows()) out.push_back(row.dot(values));
    return ValueVector(std::move(out));
}

double scalarize(const WeightVector& row, std::span<const double> channels) {
    if (row.size() != channels.size()) throw DimensionError("scalarize: dimension mismatch");
    double acc = row[0] * channels[0];
    for (std::size_t j = 1; j < channels.size(); ++j) acc += row[j] * channels[j];
    return acc;
}

void MomdpSpec::validate() const {
    if (objectives < 1) throw std::invalid_argument("MomdpSpec: need at least one objective");
    if (horizon < 1) throw std::invalid_argument("MomdpSpec: horizon must be >= 1");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("MomdpSpec: gamma must lie in [0,1)");
    if (states.size == 0 || actions.size == 0) throw std::invalid_argument("MomdpSpec: empty space");
}

namespace {
template <class Range>
std::string join_numbers(const Range& r) {
    std::ostringstream os;
    os.precision(10);
    os << '(';
    bool first = true;
    for (double x : r) {
        if (!first) os << ", ";
        os << x;
        first = false;
    }
    os << ')';
    return os.str();
}
}  // namespace

std::string to_string(const ValueVector& v) { return join_numbers(v); }
std::string to_string(const WeightVector& w) { return join_numbers(w); }

}  // namespace vmorl
