#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmorl/core/rng.hpp"

namespace vmorl::nn {

enum class Activation { tanh, linear };

/// Activations recorded by a forward pass; layer 0 holds the input.
struct MlpCache {
    std::vector<std::vector<double>> activations;
};

/// Feed-forward network with all parameters in one contiguous buffer.
/// Layer l stores its weight matrix (out x in, row-major) followed by its bias.
class Mlp {
public:
    Mlp() = default;
    /// Zero-initialized network. `activations` has one tag per layer.
    Mlp(std::vector<std::size_t> sizes, std::vector<Activation> activations);

    /// Orthogonal init with gain 1 on hidden layers and `output_gain` on the
    /// last layer; zero biases. Hidden layers use tanh, the output is linear.
    static Mlp orthogonal(std::vector<std::size_t> sizes, double output_gain, Rng& rng);

    std::size_t input_size() const { return sizes_.front(); }
    std::size_t output_size() const { return sizes_.back(); }
    std::size_t layers() const { return activations_.size(); }
    const std::vector<std::size_t>& sizes() const { return sizes_; }
    const std::vector<Activation>& activations() const { return activations_; }

    std::span<const double> parameters() const { return params_; }
    std::span<double> parameters() { return params_; }
    std::size_t parameter_count() const { return params_.size(); }

    std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
    std::size_t bias_offset(std::size_t layer) const {
        return offsets_[layer] + sizes_[layer] * sizes_[layer + 1];
    }

    std::vector<double> forward(std::span<const double> x, MlpCache* cache = nullptr) const;

    /// Adds d(out_grad . output)/d(params) into `param_grad` and, when
    /// `input_grad` is non-empty, writes d(out_grad . output)/dx into it.
    /// `cache` must come from the matching forward call on unchanged parameters.
    void backward(const MlpCache& cache, std::span<const double> out_grad, std::span<double> param_grad,
                  std::span<double> input_grad = {}) const;

    friend bool operator==(const Mlp&, const Mlp&) = default;

private:
    std::vector<std::size_t> sizes_;
    std::vector<Activation> activations_;
    std::vector<std::size_t> offsets_;
    std::vector<double> params_;
};

}  // namespace vmorl::nn
