#include "vmorl/nn/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "vmorl/core/types.hpp"

namespace vmorl::nn {
namespace {

// Rows x cols matrix with orthonormal rows (rows <= cols) or orthonormal
// columns (rows > cols), via modified Gram-Schmidt on a Gaussian draw.
std::vector<double> orthogonal_matrix(std::size_t rows, std::size_t cols, double gain, Rng& rng) {
    const bool transpose = rows > cols;
    const std::size_t r = transpose ? cols : rows;
    const std::size_t c = transpose ? rows : cols;
    std::vector<double> q(r * c);
    for (double& x : q) x = standard_normal(rng);
    for (std::size_t i = 0; i < r; ++i) {
        double* qi = &q[i * c];
        for (std::size_t j = 0; j < i; ++j) {
            const double* qj = &q[j * c];
            double dot = 0.0;
            for (std::size_t k = 0; k < c; ++k) dot += qi[k] * qj[k];
            for (std::size_t k = 0; k < c; ++k) qi[k] -= dot * qj[k];
        }
        double norm = 0.0;
        for (std::size_t k = 0; k < c; ++k) norm += qi[k] * qi[k];
        norm = std::sqrt(norm);
        for (std::size_t k = 0; k < c; ++k) qi[k] /= norm;
    }
    std::vector<double> out(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            out[i * cols + j] = gain * (transpose ? q[j * c + i] : q[i * c + j]);
    return out;
}

}  // namespace

Mlp::Mlp(std::vector<std::size_t> sizes, std::vector<Activation> activations)
    : sizes_(std::move(sizes)), activations_(std::move(activations)) {
    if (sizes_.size() < 2) throw std::invalid_argument("Mlp: need at least input and output sizes");
    if (activations_.size() != sizes_.size() - 1)
        throw std::invalid_argument("Mlp: one activation per layer required");
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        if (sizes_[l] == 0 || sizes_[l + 1] == 0) throw std::invalid_argument("Mlp: zero-width layer");
        offsets_.push_back(total);
        total += sizes_[l] * sizes_[l + 1] + sizes_[l + 1];
    }
    params_.assign(total, 0.0);
}

Mlp Mlp::orthogonal(std::vector<std::size_t> sizes, double output_gain, Rng& rng) {
    std::vector<Activation> acts(sizes.size() - 1, Activation::tanh);
    acts.back() = Activation::linear;
    Mlp net(std::move(sizes), std::move(acts));
    for (std::size_t l = 0; l < net.layers(); ++l) {
        const double gain = l + 1 == net.layers() ? output_gain : 1.0;
        const auto w = orthogonal_matrix(net.sizes_[l + 1], net.sizes_[l], gain, rng);
        std::copy(w.begin(), w.end(), net.params_.begin() + static_cast<std::ptrdiff_t>(net.offsets_[l]));
    }
    return net;
}

std::vector<double> Mlp::forward(std::span<const double> x, MlpCache* cache) const {
    if (x.size() != input_size())
        throw DimensionError("Mlp::forward: input has size " + std::to_string(x.size()) + ", expected " +
                             std::to_string(input_size()));
    std::vector<double> a(x.begin(), x.end());
    if (cache) {
        cache->activations.resize(layers() + 1);
        cache->activations[0] = a;
    }
    for (std::size_t l = 0; l < layers(); ++l) {
        const std::size_t in = sizes_[l], out = sizes_[l + 1];
        const double* w = &params_[weight_offset(l)];
        const double* b = &params_[bias_offset(l)];
        std::vector<double> z(out);
        for (std::size_t r = 0; r < out; ++r) {
            double acc = b[r];
            const double* row = w + r * in;
            for (std::size_t c = 0; c < in; ++c) acc += row[c] * a[c];
            z[r] = activations_[l] == Activation::tanh ? std::tanh(acc) : acc;
        }
        a = std::move(z);
        if (cache) cache->activations[l + 1] = a;
    }
    return a;
}

void Mlp::backward(const MlpCache& cache, std::span<const double> out_grad, std::span<double> param_grad,
                   std::span<double> input_grad) const {
    if (out_grad.size() != output_size()) throw DimensionError("Mlp::backward: output gradient size");
    if (param_grad.size() != params_.size()) throw DimensionError("Mlp::backward: parameter gradient size");
    if (cache.activations.size() != layers() + 1) throw std::invalid_argument("Mlp::backward: cache mismatch");

    std::vector<double> delta(out_grad.begin(), out_grad.end());
    for (std::size_t l = layers(); l-- > 0;) {
        const std::size_t in = sizes_[l], out = sizes_[l + 1];
        const auto& a_out = cache.activations[l + 1];
        const auto& a_in = cache.activations[l];
        if (activations_[l] == Activation::tanh)
            for (std::size_t r = 0; r < out; ++r) delta[r] *= 1.0 - a_out[r] * a_out[r];

        double* gw = &param_grad[weight_offset(l)];
        double* gb = &param_grad[bias_offset(l)];
        for (std::size_t r = 0; r < out; ++r) {
            const double d = delta[r];
            if (d == 0.0) continue;
            double* grow = gw + r * in;
            for (std::size_t c = 0; c < in; ++c) grow[c] += d * a_in[c];
            gb[r] += d;
        }
        if (l == 0 && input_grad.empty()) break;

        const double* w = &params_[weight_offset(l)];
        std::vector<double> prev(in, 0.0);
        for (std::size_t r = 0; r < out; ++r) {
            const double d = delta[r];
            if (d == 0.0) continue;
            const double* row = w + r * in;
            for (std::size_t c = 0; c < in; ++c) prev[c] += row[c] * d;
        }
        delta = std::move(prev);
    }
    if (!input_grad.empty()) {
        if (input_grad.size() != input_size()) throw DimensionError("Mlp::backward: input gradient size");
        std::copy(delta.begin(), delta.end(), input_grad.begin());
    }
}

}  // namespace vmorl::nn
