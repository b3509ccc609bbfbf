#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cffqnn/matrix.hpp"

namespace cffqnn {

struct Dataset {
    Matrix features;  // rows x columns
    std::vector<int> labels;
    std::vector<std::string> column_names;

    std::size_t rows() const { return features.rows(); }
    std::size_t cols() const { return features.cols(); }
};

struct IngestReport {
    std::size_t rows_kept = 0;
    std::size_t rows_skipped = 0;
};

/// Reads a comma-separated file with a header row. Non-label columns must be
/// numeric; rows with missing or unparsable values are skipped and counted.
/// Label cells equal to positive_label become class 1, everything else 0.
Dataset ingest_csv(const std::filesystem::path& path, const std::string& label_column,
                   const std::string& positive_label, IngestReport* report = nullptr);

/// Random undersampling of the majority class down to the minority count.
Dataset balance(const Dataset& data, std::uint64_t seed);

/// Stratified split. The train partition gets floor(rows * train_fraction)
/// rows overall, allocated per class by largest remainder, which reproduces
/// the published 688/296 and 455/114 partition sizes.
std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction,
                                  std::uint64_t seed);

struct PcaTransform {
    std::vector<double> mean;
    Matrix components;  // k x original_dim, orthonormal rows
    std::vector<double> explained_variance;
};

/// Centers, eigendecomposes the sample covariance with cyclic Jacobi
/// rotations, and keeps the top-k eigenvectors. Sign convention: the
/// largest-magnitude entry of each component is positive.
PcaTransform pca_fit(const Matrix& train_features, int k);

Matrix pca_apply(const PcaTransform& transform, const Matrix& features);

struct ScaleTransform {
    std::vector<double> min;
    std::vector<double> max;
};

/// Per-feature min-max onto [0, pi], fit on the train set only. Values
/// outside the fitted range clamp; a constant feature maps to pi/2.
ScaleTransform scale_fit(const Matrix& train_features);
Matrix scale_apply(const ScaleTransform& transform, const Matrix& features);

struct ScaledSplit {
    Matrix train;
    Matrix other;
    ScaleTransform transform;
};
ScaledSplit scale_fit_apply(const Matrix& train_features, const Matrix& other_features);

/// Symmetric eigendecomposition by cyclic Jacobi sweeps. Eigenpairs come out
/// sorted by descending eigenvalue; vectors are the rows of `vectors`.
struct EigenResult {
    std::vector<double> values;
    Matrix vectors;
};
EigenResult jacobi_eigen_symmetric(const Matrix& matrix, double off_diag_tolerance = 1e-12,
                                   int max_sweeps = 100);

/// Prepared (post-PCA, post-scaling) dataset file. The digest fingerprints
/// the fitted transforms so train and evaluate stay on the same footing.
struct PreparedData {
    int k = 0;
    std::uint64_t seed = 0;
    std::uint64_t digest = 0;
    Matrix features;
    std::vector<int> labels;
};

std::uint64_t transform_digest(const PcaTransform& pca, const ScaleTransform& scale,
                               std::uint64_t seed);
void write_prepared(const std::filesystem::path& path, const PreparedData& data);
PreparedData read_prepared(const std::filesystem::path& path);

Dataset to_dataset(const PreparedData& data);

}  // namespace cffqnn
