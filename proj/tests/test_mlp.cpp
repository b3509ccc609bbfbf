#include <doctest.h>

#include <cmath>
#include <vector>

#include "cffqnn/mlp.hpp"
#include "test_util.hpp"

using namespace cffqnn;

namespace {

Dataset xor_dataset() {
    Dataset data;
    data.features = Matrix(4, 2);
    data.features(0, 0) = 0; data.features(0, 1) = 0;
    data.features(1, 0) = 0; data.features(1, 1) = 1;
    data.features(2, 0) = 1; data.features(2, 1) = 0;
    data.features(3, 0) = 1; data.features(3, 1) = 1;
    data.labels = {0, 1, 1, 0};
    return data;
}

double train_accuracy(const MlpModel& model, const Dataset& data) {
    long correct = 0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const int pred = mlp_forward(model, data.features.row(r)) >= 0.5 ? 1 : 0;
        correct += pred == data.labels[r];
    }
    return static_cast<double>(correct) / static_cast<double>(data.rows());
}

}  // namespace

TEST_SUITE("mlp") {

TEST_CASE("all-zero weights output 0.5") {
    MlpModel model;
    model.layer_widths = {3, 2, 1};
    model.weights = {Matrix(2, 3), Matrix(1, 2)};
    model.biases = {{0.0, 0.0}, {0.0}};
    CHECK(mlp_forward(model, std::vector<double>{0.4, -1.0, 2.0}) == doctest::Approx(0.5));
}

TEST_CASE("saturating weight drives the output to 1") {
    MlpModel model;
    model.layer_widths = {1, 1};
    model.weights = {Matrix(1, 1)};
    model.weights[0](0, 0) = 50.0;
    model.biases = {{0.0}};
    CHECK(std::abs(mlp_forward(model, std::vector<double>{1.0}) - 1.0) < 1e-10);
}

TEST_CASE("forward pass matches an independent dense-matrix oracle") {
    const MlpModel model = make_mlp({2, 2, 1}, 7);
    Rng rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        // Hand-rolled evaluation, written against the shapes directly.
        double hidden[2];
        for (int j = 0; j < 2; ++j) {
            const double z =
                model.weights[0](j, 0) * x[0] + model.weights[0](j, 1) * x[1] +
                model.biases[0][j];
            hidden[j] = 1.0 / (1.0 + std::exp(-z));
        }
        const double z_out = model.weights[1](0, 0) * hidden[0] +
                             model.weights[1](0, 1) * hidden[1] + model.biases[1][0];
        const double expected = 1.0 / (1.0 + std::exp(-z_out));
        CHECK(mlp_forward(model, x) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("analytic gradient matches central finite differences") {
    Rng rng(23);
    Dataset data;
    data.features = Matrix(12, 3);
    for (double& v : data.features.data()) v = rng.uniform(-1.0, 1.0);
    for (int r = 0; r < 12; ++r) data.labels.push_back(static_cast<int>(rng.below(2)));

    const MlpModel model = make_mlp({3, 4, 2, 1}, 91);
    const std::vector<double> analytic = mlp_gradient(model, data);
    std::vector<double> flat = mlp_flatten(model);
    REQUIRE(analytic.size() == flat.size());

    const double step = 1e-5;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        std::vector<double> plus = flat, minus = flat;
        plus[i] += step;
        minus[i] -= step;
        const double fd =
            (mlp_loss(mlp_from_flat({3, 4, 2, 1}, plus), data) -
             mlp_loss(mlp_from_flat({3, 4, 2, 1}, minus), data)) /
            (2.0 * step);
        const double scale = std::max({std::abs(fd), std::abs(analytic[i]), 1e-8});
        CHECK(std::abs(fd - analytic[i]) / scale < 1e-4);
    }
}

TEST_CASE("xor becomes separable with one hidden layer") {
    MlpModel model;
    model.layer_widths = {2, 4, 1};
    model = mlp_train(model, xor_dataset(), 5000, 0.5, 3);
    CHECK(train_accuracy(model, xor_dataset()) == 1.0);
}

TEST_CASE("zero epochs leave the model untouched") {
    const MlpModel model = make_mlp({2, 3, 1}, 17);
    const MlpModel after = mlp_train(model, xor_dataset(), 0, 0.5, 17);
    CHECK(mlp_flatten(after) == mlp_flatten(model));
}

TEST_CASE("separable blobs train to high accuracy") {
    // Two 2-D blobs on opposite sides of x + y = 0 with a wide margin.
    Rng rng(5);
    Dataset data;
    data.features = Matrix(80, 2);
    for (int r = 0; r < 80; ++r) {
        const int label = r % 2;
        const double offset = label ? 1.5 : -1.5;
        data.features(r, 0) = offset + rng.uniform(-0.5, 0.5);
        data.features(r, 1) = offset + rng.uniform(-0.5, 0.5);
        data.labels.push_back(label);
    }
    MlpModel model;
    model.layer_widths = {2, 3, 1};
    model = mlp_train(model, data, 800, 0.5, 29);
    CHECK(train_accuracy(model, data) >= 0.95);
}

TEST_CASE("loss is non-increasing at a small learning rate") {
    Rng rng(37);
    Dataset data;
    data.features = Matrix(20, 2);
    for (double& v : data.features.data()) v = rng.uniform(-1.0, 1.0);
    for (int r = 0; r < 20; ++r) data.labels.push_back(static_cast<int>(rng.below(2)));

    MlpModel model = make_mlp({2, 3, 1}, 111);
    double previous = mlp_loss(model, data);
    for (int epoch = 0; epoch < 50; ++epoch) {
        model = mlp_train(std::move(model), data, 1, 1e-3, 0);
        const double current = mlp_loss(model, data);
        CHECK(current <= previous + 1e-12);
        previous = current;
    }
}

TEST_CASE("training rejects bad arguments") {
    MlpModel model;
    model.layer_widths = {2, 1};
    CHECK_THROWS_AS(mlp_train(model, xor_dataset(), 10, 0.0, 1), std::invalid_argument);
    Dataset empty;
    CHECK_THROWS_AS(mlp_train(model, empty, 10, 0.5, 1), std::invalid_argument);
}

}  // TEST_SUITE
