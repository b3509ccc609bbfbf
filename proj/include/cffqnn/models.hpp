#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cffqnn/circuit.hpp"
#include "cffqnn/matrix.hpp"

namespace cffqnn {

enum class ModelKind { Cffqnn, FixedCffqnn, QnnBaseline };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

/// Layer widths of a feed-forward network of qubits, e.g. {3, 2, 1}. The
/// final layer is always the single output qubit. num_features is the length
/// of the classical feature vector fed to the first layer.
struct Topology {
    std::vector<int> layer_widths;
    int num_features = 0;

    int total_qubits() const;
    int first_layer_width() const { return layer_widths.front(); }
    /// Qubit index where layer l starts; layers are packed in order.
    int layer_start(std::size_t l) const;
    void validate() const;
};

/// Trainable angles for the feed-forward models. Column 0 of every block is
/// the bias; encoding row q holds [b_q, W_q1, ..., W_qN] and hidden block l
/// row j holds [theta_0j, theta_1j, ..., theta_prev,j].
struct ParameterSet {
    Matrix encoding_weights;            // first_layer_width x (N+1)
    std::vector<Matrix> hidden_thetas;  // one block per adjacent layer pair

    static ParameterSet zeros(const Topology& topology);
    /// Unflattens in the same row-major block order to_flat produces.
    static ParameterSet from_flat(const Topology& topology, std::span<const double> flat);
    std::vector<double> to_flat() const;
};

struct ModelSpec {
    ModelKind kind = ModelKind::Cffqnn;
    Topology topology;         // baseline uses only num_features
    int feature_map_reps = 2;  // baseline
    int ansatz_reps = 2;       // baseline

    void validate() const;
};

/// One RY per first-layer qubit (all encodings collapse additively), then per
/// hidden/output qubit a bias RY followed by a CRY from every qubit of the
/// previous layer.
Circuit build_cffqnn_circuit(const Topology& topology, const ParameterSet& params,
                             std::span<const double> features);

void append_zz_feature_map(Circuit& circuit, std::span<const double> features, int reps);
void append_real_amplitudes(Circuit& circuit, std::span<const double> thetas, int reps);

/// ZZFeatureMap (full entanglement) followed by the RealAmplitudes ansatz.
/// Requires thetas of length num_features * (ansatz_reps + 1).
Circuit build_qnn_circuit(int num_features, int feature_map_reps, int ansatz_reps,
                          std::span<const double> thetas,
                          std::span<const double> features);

struct Prediction {
    double expectation = 0.0;
    int predicted_class = 0;  // 1 iff expectation < 0
};

/// Builds the model circuit for one feature row from the flat parameter
/// vector (full vector, frozen block included for FIXED_CFFQNN).
Circuit build_model_circuit(const ModelSpec& spec, std::span<const double> flat_params,
                            std::span<const double> features);

/// Runs the model and reads it out: CFFQNN and the baseline take <Z> on the
/// final qubit, FIXED_CFFQNN the Z-parity over all non-first-layer qubits.
Prediction predict(const ModelSpec& spec, std::span<const double> flat_params,
                   std::span<const double> features);

int trainable_parameter_count(const ModelSpec& spec);
/// Flat parameter vector length; exceeds the trainable count only for
/// FIXED_CFFQNN, whose frozen encoding block leads the vector.
int total_parameter_count(const ModelSpec& spec);

/// Flat-vector parameter file: `key value` header lines, then `values N`
/// and N angles one per line with 17 significant digits. The MLP baseline
/// reuses the same format with model MLP.
struct ParameterFile {
    std::string model;
    std::vector<int> topology;  // layer widths (CFFQNN variants, MLP)
    int num_features = 0;
    int feature_map_reps = 0;  // baseline only
    int ansatz_reps = 0;       // baseline only
    std::uint64_t seed = 0;
    std::uint64_t data_digest = 0;
    int trainable = 0;
    std::vector<double> values;
};

void write_parameter_file(const std::filesystem::path& path, const ParameterFile& file);
ParameterFile read_parameter_file(const std::filesystem::path& path);

ParameterFile make_parameter_file(const ModelSpec& spec, std::uint64_t seed,
                                  std::uint64_t data_digest,
                                  std::vector<double> values);
ModelSpec model_spec_from_file(const ParameterFile& file);

}  // namespace cffqnn
