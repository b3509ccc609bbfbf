#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cffqnn/circuit.hpp"

namespace cffqnn {

struct ConfusionCounts {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;

    long total() const { return tp + fp + tn + fn; }
};

/// Class 1 is positive.
ConfusionCounts confusion(std::span<const int> predictions, std::span<const int> labels);

/// Precision, recall, and F1 are nullopt (not 0) when their denominators
/// vanish; an all-negative predictor keeps recall 0 but has no precision.
struct MetricsReport {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    double accuracy = 0.0;
    ConfusionCounts counts;
};

MetricsReport compute_metrics(const ConfusionCounts& counts);

struct ComparisonEntry {
    std::string name;
    MetricsReport metrics;
    ResourceReport resources;
    bool failed = false;
    std::string error;
};

/// Structured text report, one record per model. Undefined metrics render
/// as null.
std::string comparison_table(std::span<const ComparisonEntry> entries);

/// CSV mirror of the same records, for plotting.
std::string comparison_csv(std::span<const ComparisonEntry> entries);

}  // namespace cffqnn
