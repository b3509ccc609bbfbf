#include "cffqnn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cffqnn/rng.hpp"

namespace cffqnn {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

constexpr double kProbFloor = 1e-12;

void check_model(const MlpModel& model) {
    if (model.layer_widths.size() < 2) {
        throw std::invalid_argument("mlp needs at least input and output layers");
    }
    if (model.layer_widths.back() != 1) {
        throw std::invalid_argument("mlp output layer must have width 1");
    }
    if (!model.initialized()) {
        throw std::invalid_argument("mlp model is uninitialized");
    }
    for (std::size_t l = 0; l + 1 < model.layer_widths.size(); ++l) {
        const auto& w = model.weights[l];
        if (static_cast<int>(w.rows()) != model.layer_widths[l + 1] ||
            static_cast<int>(w.cols()) != model.layer_widths[l] ||
            model.biases[l].size() != w.rows()) {
            throw std::invalid_argument("mlp weight shapes do not chain");
        }
    }
}

/// Activations per layer, input included.
std::vector<std::vector<double>> forward_all(const MlpModel& model,
                                             std::span<const double> features) {
    std::vector<std::vector<double>> acts;
    acts.emplace_back(features.begin(), features.end());
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        const Matrix& w = model.weights[l];
        std::vector<double> next(w.rows());
        for (std::size_t j = 0; j < w.rows(); ++j) {
            double z = model.biases[l][j];
            for (std::size_t i = 0; i < w.cols(); ++i) z += w(j, i) * acts.back()[i];
            next[j] = sigmoid(z);
        }
        acts.push_back(std::move(next));
    }
    return acts;
}

}  // namespace

MlpModel make_mlp(std::vector<int> layer_widths, std::uint64_t seed) {
    MlpModel model;
    model.layer_widths = std::move(layer_widths);
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < model.layer_widths.size(); ++l) {
        Matrix w(model.layer_widths[l + 1], model.layer_widths[l]);
        for (double& v : w.data()) v = rng.uniform(-0.5, 0.5);
        std::vector<double> b(static_cast<std::size_t>(model.layer_widths[l + 1]));
        for (double& v : b) v = rng.uniform(-0.5, 0.5);
        model.weights.push_back(std::move(w));
        model.biases.push_back(std::move(b));
    }
    check_model(model);
    return model;
}

double mlp_forward(const MlpModel& model, std::span<const double> features) {
    check_model(model);
    if (static_cast<int>(features.size()) != model.layer_widths.front()) {
        throw std::invalid_argument("feature vector length does not match input width");
    }
    return forward_all(model, features).back()[0];
}

double mlp_loss(const MlpModel& model, const Dataset& data) {
    if (data.rows() == 0) throw std::invalid_argument("empty dataset");
    double loss = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const double p = std::clamp(mlp_forward(model, data.features.row(r)), kProbFloor,
                                    1.0 - kProbFloor);
        const int y = data.labels[r];
        loss -= y ? std::log(p) : std::log(1.0 - p);
    }
    return loss / static_cast<double>(data.rows());
}

std::vector<double> mlp_gradient(const MlpModel& model, const Dataset& data) {
    check_model(model);
    if (data.rows() == 0) throw std::invalid_argument("empty dataset");

    std::vector<Matrix> grad_w;
    std::vector<std::vector<double>> grad_b;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        grad_w.emplace_back(model.weights[l].rows(), model.weights[l].cols());
        grad_b.emplace_back(model.biases[l].size(), 0.0);
    }

    for (std::size_t r = 0; r < data.rows(); ++r) {
        const auto acts = forward_all(model, data.features.row(r));
        // Sigmoid + BCE collapse to delta = p - y at the output.
        std::vector<double> delta{acts.back()[0] - data.labels[r]};
        for (std::size_t l = model.weights.size(); l-- > 0;) {
            const Matrix& w = model.weights[l];
            for (std::size_t j = 0; j < w.rows(); ++j) {
                grad_b[l][j] += delta[j];
                for (std::size_t i = 0; i < w.cols(); ++i) {
                    grad_w[l](j, i) += delta[j] * acts[l][i];
                }
            }
            if (l == 0) break;
            std::vector<double> prev_delta(w.cols(), 0.0);
            for (std::size_t i = 0; i < w.cols(); ++i) {
                double sum = 0.0;
                for (std::size_t j = 0; j < w.rows(); ++j) sum += w(j, i) * delta[j];
                prev_delta[i] = sum * acts[l][i] * (1.0 - acts[l][i]);
            }
            delta = std::move(prev_delta);
        }
    }

    const double inv_n = 1.0 / static_cast<double>(data.rows());
    std::vector<double> flat;
    for (std::size_t l = 0; l < grad_w.size(); ++l) {
        for (double v : grad_w[l].data()) flat.push_back(v * inv_n);
        for (double v : grad_b[l]) flat.push_back(v * inv_n);
    }
    return flat;
}

MlpModel mlp_train(MlpModel model, const Dataset& data, int epochs, double learning_rate,
                   std::uint64_t seed) {
    if (learning_rate <= 0.0) throw std::invalid_argument("learning rate must be > 0");
    if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
    if (data.rows() == 0) throw std::invalid_argument("empty dataset");
    if (!model.initialized()) {
        model = make_mlp(model.layer_widths, seed);
    }
    check_model(model);
    if (static_cast<int>(data.cols()) != model.layer_widths.front()) {
        throw std::invalid_argument("dataset width does not match input layer");
    }

    for (int epoch = 0; epoch < epochs; ++epoch) {
        const std::vector<double> grad = mlp_gradient(model, data);
        std::size_t k = 0;
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            for (double& v : model.weights[l].data()) v -= learning_rate * grad[k++];
            for (double& v : model.biases[l]) v -= learning_rate * grad[k++];
        }
    }
    return model;
}

std::vector<double> mlp_flatten(const MlpModel& model) {
    check_model(model);
    std::vector<double> flat;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        flat.insert(flat.end(), model.weights[l].data().begin(),
                    model.weights[l].data().end());
        flat.insert(flat.end(), model.biases[l].begin(), model.biases[l].end());
    }
    return flat;
}

MlpModel mlp_from_flat(std::vector<int> layer_widths, std::span<const double> flat) {
    MlpModel model;
    model.layer_widths = std::move(layer_widths);
    std::size_t k = 0;
    for (std::size_t l = 0; l + 1 < model.layer_widths.size(); ++l) {
        Matrix w(model.layer_widths[l + 1], model.layer_widths[l]);
        for (double& v : w.data()) {
            if (k >= flat.size()) throw std::invalid_argument("flat mlp vector too short");
            v = flat[k++];
        }
        std::vector<double> b(static_cast<std::size_t>(model.layer_widths[l + 1]));
        for (double& v : b) {
            if (k >= flat.size()) throw std::invalid_argument("flat mlp vector too short");
            v = flat[k++];
        }
        model.weights.push_back(std::move(w));
        model.biases.push_back(std::move(b));
    }
    if (k != flat.size()) throw std::invalid_argument("flat mlp vector too long");
    check_model(model);
    return model;
}

}  // namespace cffqnn
