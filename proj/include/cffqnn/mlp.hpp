#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cffqnn/dataset.hpp"
#include "cffqnn/matrix.hpp"

namespace cffqnn {

/// Small fully-connected network with logistic sigmoid on every hidden and
/// output layer. Exists as the classical comparison point; nothing fancier
/// than full-batch gradient descent on binary cross-entropy.
struct MlpModel {
    std::vector<int> layer_widths;  // e.g. {7, 3, 2, 1}
    std::vector<Matrix> weights;    // weights[l]: widths[l+1] x widths[l]
    std::vector<std::vector<double>> biases;

    bool initialized() const { return !weights.empty(); }
};

/// Weights and biases drawn from seeded uniform [-0.5, 0.5].
MlpModel make_mlp(std::vector<int> layer_widths, std::uint64_t seed);

/// Class-1 probability.
double mlp_forward(const MlpModel& model, std::span<const double> features);

/// Mean binary cross-entropy over the dataset.
double mlp_loss(const MlpModel& model, const Dataset& data);

/// Gradient of mlp_loss in the flat order of mlp_flatten.
std::vector<double> mlp_gradient(const MlpModel& model, const Dataset& data);

/// Full-batch gradient descent. Deterministic for a fixed seed; the seed
/// initializes the weights when the model comes in uninitialized, otherwise
/// it is unused.
MlpModel mlp_train(MlpModel model, const Dataset& data, int epochs,
                   double learning_rate, std::uint64_t seed);

std::vector<double> mlp_flatten(const MlpModel& model);
MlpModel mlp_from_flat(std::vector<int> layer_widths, std::span<const double> flat);

}  // namespace cffqnn
