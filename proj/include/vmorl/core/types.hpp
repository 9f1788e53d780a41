#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vmorl {

/// Thrown when two objects that must share a dimension do not.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Tolerance used for every simplex-membership test.
inline constexpr double kSimplexTolerance = 1e-9;

/// Per-objective expected discounted returns, one entry per objective.
class ValueVector {
public:
    ValueVector() = default;
    explicit ValueVector(std::vector<double> values);
    ValueVector(std::initializer_list<double> values);

    static ValueVector zeros(std::size_t objectives);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    /// Largest absolute componentwise difference.
    double max_norm_distance(const ValueVector& other) const;

    friend bool operator==(const ValueVector&, const ValueVector&) = default;

private:
    std::vector<double> values_;
};

/// A point on the probability simplex used for linear scalarization.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<double> weights);
    WeightVector(std::initializer_list<double> weights);

    /// The k-th extremum e_k of the simplex in `dims` dimensions.
    static WeightVector unit(std::size_t dims, std::size_t k);
    static WeightVector uniform(std::size_t dims);
    /// Clamps tiny negatives to zero and rescales to sum one.
    static WeightVector normalized(std::vector<double> raw);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const { return weights_; }
    auto begin() const { return weights_.begin(); }
    auto end() const { return weights_.end(); }

    double dot(const ValueVector& v) const;
    double max_norm_distance(const WeightVector& other) const;
    /// Shannon entropy in nats; zero at the extrema.
    double entropy() const;
    bool is_extremum() const;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<double> weights_;
};

/// Inter-objective relationship matrix: row i scalarizes the value vector into
/// the proxy objective used while training against objective i.
class Iorm {
public:
    explicit Iorm(std::vector<WeightVector> rows);

    static Iorm identity(std::size_t objectives);

    std::size_t size() const { return rows_.size(); }
    const WeightVector& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<WeightVector>& rows() const { return rows_; }

    /// Copy of this matrix with row i replaced.
    Iorm with_row(std::size_t i, WeightVector row) const;

    friend bool operator==(const Iorm&, const Iorm&) = default;

private:
    std::vector<WeightVector> rows_;
};

/// Y_i = sum_j w_ij V_j.
ValueVector proxy_values(const Iorm& iorm, const ValueVector& values);

/// Row-i scalarization of a raw reward (or value) channel vector.
/// Accumulates from the first term so a unit row reproduces its channel exactly.
double scalarize(const WeightVector& row, std::span<const double> channels);

enum class SpaceKind { discrete, box };

struct SpaceDescriptor {
    SpaceKind kind = SpaceKind::discrete;
    std::size_t size = 0;  // element count (discrete) or dimension (box)
};

/// Static description of a multi-objective decision problem.
struct MomdpSpec {
    SpaceDescriptor states;
    SpaceDescriptor actions;
    std::size_t objectives = 2;
    double gamma = 0.99;
    std::size_t horizon = 1;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

std::string to_string(const ValueVector& v);
std::string to_string(const WeightVector& w);

}  // namespace vmorl
