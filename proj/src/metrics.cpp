#include "cffqnn/metrics.hpp"

#include <sstream>
#include <stdexcept>

#include "cffqnn/textio.hpp"

namespace cffqnn {

ConfusionCounts confusion(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.empty() || predictions.size() != labels.size()) {
        throw std::invalid_argument("predictions and labels must be equal non-zero length");
    }
    ConfusionCounts counts;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (labels[i]) {
            predictions[i] ? ++counts.tp : ++counts.fn;
        } else {
            predictions[i] ? ++counts.fp : ++counts.tn;
        }
    }
    return counts;
}

MetricsReport compute_metrics(const ConfusionCounts& counts) {
    if (counts.total() <= 0) throw std::invalid_argument("empty confusion counts");
    MetricsReport report;
    report.counts = counts;
    report.accuracy = static_cast<double>(counts.tp + counts.tn) /
                      static_cast<double>(counts.total());
    if (counts.tp + counts.fp > 0) {
        report.precision = static_cast<double>(counts.tp) /
                           static_cast<double>(counts.tp + counts.fp);
    }
    if (counts.tp + counts.fn > 0) {
        report.recall = static_cast<double>(counts.tp) /
                        static_cast<double>(counts.tp + counts.fn);
    }
    if (report.precision && report.recall && (*report.precision + *report.recall) > 0.0) {
        report.f1 = 2.0 * *report.precision * *report.recall /
                    (*report.precision + *report.recall);
    }
    return report;
}

namespace {

std::string render(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string("null");
}

}  // namespace

std::string comparison_table(std::span<const ComparisonEntry> entries) {
    if (entries.empty()) throw std::invalid_argument("comparison needs at least one entry");
    std::ostringstream out;
    for (const ComparisonEntry& e : entries) {
        out << "model " << e.name << "\n";
        if (e.failed) {
            out << "status failed\n";
            if (!e.error.empty()) out << "error " << e.error << "\n";
            out << "\n";
            continue;
        }
        out << "precision " << render(e.metrics.precision) << "\n";
        out << "recall " << render(e.metrics.recall) << "\n";
        out << "accuracy " << format_double(e.metrics.accuracy) << "\n";
        out << "f1 " << render(e.metrics.f1) << "\n";
        out << "depth " << e.resources.depth << "\n";
        out << "native_controlled_ops " << e.resources.native_controlled_ops << "\n";
        out << "cnot_equivalent " << e.resources.cnot_equivalent << "\n";
        out << "trainable_parameters " << e.resources.trainable_parameters << "\n";
        out << "wall_time_seconds " << format_double(e.resources.wall_time_seconds) << "\n";
        out << "\n";
    }
    return out.str();
}

std::string comparison_csv(std::span<const ComparisonEntry> entries) {
    if (entries.empty()) throw std::invalid_argument("comparison needs at least one entry");
    std::ostringstream out;
    out << "name,precision,recall,accuracy,f1,depth,native_controlled_ops,"
           "cnot_equivalent,trainable_parameters,wall_time_seconds\n";
    for (const ComparisonEntry& e : entries) {
        out << e.name << ',';
        if (e.failed) {
            out << "null,null,null,null,null,null,null,null,null\n";
            continue;
        }
        out << render(e.metrics.precision) << ',' << render(e.metrics.recall) << ','
            << format_double(e.metrics.accuracy) << ',' << render(e.metrics.f1) << ','
            << e.resources.depth << ',' << e.resources.native_controlled_ops << ','
            << e.resources.cnot_equivalent << ',' << e.resources.trainable_parameters
            << ',' << format_double(e.resources.wall_time_seconds) << "\n";
    }
    return out.str();
}

}  // namespace cffqnn
