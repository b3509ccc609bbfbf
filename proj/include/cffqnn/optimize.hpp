#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cffqnn/dataset.hpp"
#include "cffqnn/models.hpp"

namespace cffqnn {

/// Derivative-free minimization problem. evaluate must be deterministic for
/// a fixed point; budget counts objective evaluations.
struct ObjectiveSpec {
    int dimension = 0;
    std::function<double(std::span<const double>)> evaluate;
    int budget = 100;
    std::vector<double> initial_point;
    double trust_region_initial = 0.5;
    double trust_region_final = 1e-4;
};

struct MinimizeResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    int evaluations_used = 0;
};

/// COBYLA-style optimizer: fits a linear model of the objective over a
/// simplex of n+1 points and steps the best vertex to the trust-region
/// boundary along the model's descent direction, shrinking the radius when
/// steps stop paying off. Terminates when the radius falls below
/// trust_region_final or the budget runs out. Never returns a point worse
/// than the initial one. Throws std::runtime_error on a non-finite
/// objective value.
MinimizeResult minimize(const ObjectiveSpec& spec);

enum class LossKind { Bce, Squared };

std::string loss_kind_name(LossKind kind);
LossKind loss_kind_from_name(const std::string& name);

/// Maps expectations in [-1, 1] to class-1 probabilities p = (1 - e) / 2,
/// clamped to [1e-12, 1 - 1e-12], then BCE or mean squared error against the
/// labels.
double loss(std::span<const double> expectations, std::span<const int> labels,
            LossKind kind);

struct TrainConfig {
    int iterations = 100;  // optimizer evaluation budget
    std::uint64_t seed = 42;
    LossKind loss_kind = LossKind::Bce;
    double trust_region_initial = 0.5;
    double trust_region_final = 1e-4;
};

struct TrainResult {
    std::vector<double> parameters;  // full flat vector, frozen block included
    std::vector<double> loss_log;    // one entry per objective evaluation
    double best_loss = 0.0;
    int evaluations_used = 0;
    double wall_seconds = 0.0;
};

/// Hybrid loop: wraps predict over the training set into an ObjectiveSpec on
/// the flattened trainable parameters (initialized from seeded uniform
/// [-0.1, 0.1]; FIXED_CFFQNN's frozen encoding block is drawn once from
/// seeded uniform [-1, 1] and never touched by the optimizer).
TrainResult train(const ModelSpec& spec, const Dataset& train_data,
                  const TrainConfig& config);

}  // namespace cffqnn
