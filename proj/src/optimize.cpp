#include "cffqnn/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "cffqnn/rng.hpp"

namespace cffqnn {

namespace {

/// Inverts a row-major n x n matrix by Gauss-Jordan elimination with partial
/// pivoting. Returns false when numerically singular.
bool invert(std::vector<std::vector<double>> a, std::vector<std::vector<double>>& inv) {
    const std::size_t n = a.size();
    inv.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-14) return false;
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double d = a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return true;
}

struct BudgetExhausted {};

}  // namespace

// Powell-style COBYLA specialized to the unconstrained case: a simplex of
// n+1 points carries a linear interpolation model of the objective. Each
// iteration either repairs the simplex geometry (one vertex at a time, along
// the most poorly spanned dual direction) or steps the best vertex to the
// trust-region boundary along the model's descent direction. The radius
// shrinks only when a full step through an acceptable simplex fails to
// deliver a tenth of its predicted reduction.
MinimizeResult minimize(const ObjectiveSpec& spec) {
    const std::size_t n = static_cast<std::size_t>(spec.dimension);
    if (spec.dimension < 1) throw std::invalid_argument("dimension must be >= 1");
    if (spec.budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (!(spec.trust_region_final < spec.trust_region_initial)) {
        throw std::invalid_argument("trust_region_final must be < trust_region_initial");
    }
    if (spec.initial_point.size() != n) {
        throw std::invalid_argument("initial point has wrong dimension");
    }

    // Powell's simplex-shape constants.
    constexpr double alpha = 0.25;  // min sigma_j / rho
    constexpr double beta = 2.1;    // max edge length / rho
    constexpr double gamma = 0.5;   // geometry step length / rho

    MinimizeResult result;
    result.best_point = spec.initial_point;
    int evals = 0;
    auto evaluate = [&](const std::vector<double>& x) {
        if (evals >= spec.budget) throw BudgetExhausted{};
        const double v = spec.evaluate(x);
        ++evals;
        if (!std::isfinite(v)) {
            throw std::runtime_error("objective returned a non-finite value");
        }
        if (evals == 1 || v < result.best_value) {
            result.best_value = v;
            result.best_point = x;
        }
        return v;
    };

    std::vector<double> center = spec.initial_point;  // best vertex
    double center_value = 0.0;
    std::vector<std::vector<double>> offsets(n);  // row j: vertex j - center
    std::vector<double> values(n);
    double rho = spec.trust_region_initial;

    try {
        center_value = evaluate(center);
        for (std::size_t j = 0; j < n; ++j) {
            offsets[j].assign(n, 0.0);
            offsets[j][j] = rho;
            std::vector<double> vertex = center;
            vertex[j] += rho;
            values[j] = evaluate(vertex);
        }

        std::vector<std::vector<double>> inverse;
        while (rho > spec.trust_region_final) {
            if (!invert(offsets, inverse)) {
                // Degenerate simplex: reseat the shortest offset on a fresh axis.
                std::size_t shortest = 0;
                double shortest_len = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < n; ++j) {
                    double len = 0.0;
                    for (double c : offsets[j]) len += c * c;
                    if (len < shortest_len) {
                        shortest_len = len;
                        shortest = j;
                    }
                }
                offsets[shortest].assign(n, 0.0);
                offsets[shortest][shortest] = gamma * rho;
                std::vector<double> vertex = center;
                vertex[shortest] += gamma * rho;
                values[shortest] = evaluate(vertex);
                continue;
            }

            // Column j of the inverse is the dual direction of vertex j;
            // sigma_j = 1 / |column_j| is its distance from the hyperplane
            // spanned by the other offsets.
            std::vector<double> edge_len(n), sigma(n);
            for (std::size_t j = 0; j < n; ++j) {
                double len = 0.0;
                for (double c : offsets[j]) len += c * c;
                edge_len[j] = std::sqrt(len);
                double dual = 0.0;
                for (std::size_t r = 0; r < n; ++r) dual += inverse[r][j] * inverse[r][j];
                sigma[j] = 1.0 / std::sqrt(dual);
            }

            // Model gradient from the interpolation conditions
            // offsets[j] . g = values[j] - center_value.
            std::vector<double> gradient(n, 0.0);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t j = 0; j < n; ++j) {
                    gradient[r] += inverse[r][j] * (values[j] - center_value);
                }
            }

            // Geometry phase: repair the worst-shaped vertex before trusting
            // the model.
            std::size_t repair = n;
            double worst_sigma = alpha * rho;
            double worst_len = beta * rho;
            for (std::size_t j = 0; j < n; ++j) {
                if (sigma[j] < worst_sigma) {
                    worst_sigma = sigma[j];
                    repair = j;
                }
            }
            if (repair == n) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (edge_len[j] > worst_len) {
                        worst_len = edge_len[j];
                        repair = j;
                    }
                }
            }
            if (repair < n && std::getenv("CFFQNN_OPT_DEBUG")) {
                std::fprintf(stderr, "eval %d rho %.4g GEOMETRY j=%zu sigma %.4g len %.4g\n",
                             evals, rho, repair, sigma[repair], edge_len[repair]);
            }
            if (repair < n) {
                double dual_norm = 1.0 / sigma[repair];
                std::vector<double> direction(n);
                for (std::size_t r = 0; r < n; ++r) {
                    direction[r] = inverse[r][repair] * sigma[repair];
                }
                (void)dual_norm;
                double slope = 0.0;
                for (std::size_t r = 0; r < n; ++r) slope += gradient[r] * direction[r];
                const double sign = slope > 0.0 ? -1.0 : 1.0;
                std::vector<double> offset(n), vertex = center;
                for (std::size_t r = 0; r < n; ++r) {
                    offset[r] = sign * gamma * rho * direction[r];
                    vertex[r] += offset[r];
                }
                values[repair] = evaluate(vertex);
                offsets[repair] = std::move(offset);
                continue;
            }

            double gnorm = 0.0;
            for (double g : gradient) gnorm += g * g;
            gnorm = std::sqrt(gnorm);
            if (!(gnorm > 0.0)) {
                rho *= 0.5;
                continue;
            }

            // Trust-region phase: full step to the boundary.
            std::vector<double> step(n), trial = center;
            for (std::size_t r = 0; r < n; ++r) {
                step[r] = -rho * gradient[r] / gnorm;
                trial[r] += step[r];
            }
            const double predicted = rho * gnorm;
            const double trial_value = evaluate(trial);
            const double actual = center_value - trial_value;

            // Replace the vertex whose dual direction the step re-measures;
            // |column_j . step| is the factor the simplex volume picks up.
            std::size_t drop = 0;
            double best_weight = -1.0;
            for (std::size_t j = 0; j < n; ++j) {
                double w = 0.0;
                for (std::size_t r = 0; r < n; ++r) w += inverse[r][j] * step[r];
                w = std::abs(w);
                if (w > best_weight) {
                    best_weight = w;
                    drop = j;
                }
            }
            if (trial_value < center_value) {
                // Pivot: the trial becomes the center, the old center takes
                // the dropped vertex's slot.
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == drop) continue;
                    for (std::size_t r = 0; r < n; ++r) offsets[j][r] -= step[r];
                }
                for (std::size_t r = 0; r < n; ++r) offsets[drop][r] = -step[r];
                values[drop] = center_value;
                center = std::move(trial);
                center_value = trial_value;
            } else {
                offsets[drop] = std::move(step);
                values[drop] = trial_value;
            }

            if (std::getenv("CFFQNN_OPT_DEBUG")) {
                std::fprintf(stderr, "eval %d rho %.4g f0 %.6g trial %.6g pred %.4g act %.4g\n",
                             evals, rho, center_value, trial_value, predicted, actual);
            }
            if (actual <= 0.1 * predicted) {
                rho *= 0.5;
            }
        }
    } catch (const BudgetExhausted&) {
        // fall through with the best point seen so far
    }

    result.evaluations_used = evals;
    return result;
}


std::string loss_kind_name(LossKind kind) {
    return kind == LossKind::Bce ? "BCE" : "SQUARED";
}

LossKind loss_kind_from_name(const std::string& name) {
    if (name == "BCE" || name == "bce") return LossKind::Bce;
    if (name == "SQUARED" || name == "squared") return LossKind::Squared;
    throw std::invalid_argument("unknown loss kind: " + name);
}

double loss(std::span<const double> expectations, std::span<const int> labels,
            LossKind kind) {
    if (expectations.empty()) throw std::invalid_argument("empty loss input");
    if (expectations.size() != labels.size()) {
        throw std::invalid_argument("expectations and labels differ in length");
    }
    constexpr double floor = 1e-12;
    double total = 0.0;
    for (std::size_t i = 0; i < expectations.size(); ++i) {
        const double p =
            std::clamp((1.0 - expectations[i]) / 2.0, floor, 1.0 - floor);
        const int y = labels[i];
        if (kind == LossKind::Bce) {
            total -= y ? std::log(p) : std::log(1.0 - p);
        } else {
            const double d = p - y;
            total += d * d;
        }
    }
    return total / static_cast<double>(expectations.size());
}

TrainResult train(const ModelSpec& spec, const Dataset& train_data,
                  const TrainConfig& config) {
    spec.validate();
    if (config.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (train_data.rows() == 0) throw std::invalid_argument("empty training set");
    if (static_cast<int>(train_data.cols()) != spec.topology.num_features) {
        throw std::invalid_argument("training data width does not match num_features");
    }

    const auto start = std::chrono::steady_clock::now();

    const int trainable = trainable_parameter_count(spec);
    const int total = total_parameter_count(spec);
    const int frozen = total - trainable;

    std::vector<double> frozen_block(static_cast<std::size_t>(frozen));
    if (frozen > 0) {
        Rng rng(config.seed + seed_offset::frozen);
        for (double& v : frozen_block) v = rng.uniform(-1.0, 1.0);
    }
    std::vector<double> initial(static_cast<std::size_t>(trainable));
    {
        const char* env = std::getenv("CFFQNN_INIT_SCALE");
        const double scale = env ? std::stod(env) : 1.0;
        Rng rng(config.seed + seed_offset::init);
        for (double& v : initial) v = rng.uniform(-scale, scale);
    }

    TrainResult result;
    std::vector<double> full(static_cast<std::size_t>(total));
    std::copy(frozen_block.begin(), frozen_block.end(), full.begin());
    std::vector<double> expectations(train_data.rows());

    ObjectiveSpec objective;
    objective.dimension = trainable;
    objective.budget = config.iterations;
    objective.initial_point = initial;
    objective.trust_region_initial = config.trust_region_initial;
    objective.trust_region_final = config.trust_region_final;
    objective.evaluate = [&](std::span<const double> x) {
        std::copy(x.begin(), x.end(), full.begin() + frozen);
        for (std::size_t r = 0; r < train_data.rows(); ++r) {
            expectations[r] = predict(spec, full, train_data.features.row(r)).expectation;
        }
        const double value = loss(expectations, train_data.labels, config.loss_kind);
        result.loss_log.push_back(value);
        return value;
    };

    const MinimizeResult best = minimize(objective);

    result.parameters = std::move(full);
    std::copy(best.best_point.begin(), best.best_point.end(),
              result.parameters.begin() + frozen);
    result.best_loss = best.best_value;
    result.evaluations_used = best.evaluations_used;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace cffqnn
