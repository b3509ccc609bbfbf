#include "cffqnn/models.hpp"

#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cffqnn/textio.hpp"

namespace cffqnn {

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Cffqnn: return "CFFQNN";
        case ModelKind::FixedCffqnn: return "FIXED_CFFQNN";
        case ModelKind::QnnBaseline: return "QNN_BASELINE";
    }
    return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "CFFQNN") return ModelKind::Cffqnn;
    if (name == "FIXED_CFFQNN") return ModelKind::FixedCffqnn;
    if (name == "QNN_BASELINE") return ModelKind::QnnBaseline;
    throw std::invalid_argument("unknown model kind: " + name);
}

int Topology::total_qubits() const {
    return std::accumulate(layer_widths.begin(), layer_widths.end(), 0);
}

int Topology::layer_start(std::size_t l) const {
    return std::accumulate(layer_widths.begin(), layer_widths.begin() + l, 0);
}

void Topology::validate() const {
    if (layer_widths.size() < 2) {
        throw std::invalid_argument("topology needs at least 2 layers");
    }
    for (int w : layer_widths) {
        if (w < 1) throw std::invalid_argument("layer widths must be >= 1");
    }
    if (layer_widths.back() != 1) {
        throw std::invalid_argument("final layer must have exactly 1 qubit");
    }
    if (num_features < 1) {
        throw std::invalid_argument("num_features must be >= 1");
    }
    if (total_qubits() > kMaxQubits) {
        throw std::invalid_argument("topology exceeds the " +
                                    std::to_string(kMaxQubits) + "-qubit simulator cap");
    }
}

ParameterSet ParameterSet::zeros(const Topology& topology) {
    topology.validate();
    ParameterSet params;
    params.encoding_weights = Matrix(topology.first_layer_width(),
                                     static_cast<std::size_t>(topology.num_features) + 1);
    for (std::size_t l = 0; l + 1 < topology.layer_widths.size(); ++l) {
        params.hidden_thetas.emplace_back(topology.layer_widths[l + 1],
                                          topology.layer_widths[l] + 1);
    }
    return params;
}

ParameterSet ParameterSet::from_flat(const Topology& topology,
                                     std::span<const double> flat) {
    ParameterSet params = zeros(topology);
    std::size_t expected = params.encoding_weights.data().size();
    for (const Matrix& block : params.hidden_thetas) expected += block.data().size();
    if (flat.size() != expected) {
        throw std::invalid_argument("flat parameter vector has " +
                                    std::to_string(flat.size()) + " values, expected " +
                                    std::to_string(expected));
    }
    auto it = flat.begin();
    auto fill = [&](Matrix& m) {
        std::copy(it, it + static_cast<std::ptrdiff_t>(m.data().size()), m.data().begin());
        it += static_cast<std::ptrdiff_t>(m.data().size());
    };
    fill(params.encoding_weights);
    for (Matrix& block : params.hidden_thetas) fill(block);
    return params;
}

std::vector<double> ParameterSet::to_flat() const {
    std::vector<double> flat(encoding_weights.data());
    for (const Matrix& block : hidden_thetas) {
        flat.insert(flat.end(), block.data().begin(), block.data().end());
    }
    return flat;
}

void ModelSpec::validate() const {
    if (kind == ModelKind::QnnBaseline) {
        if (topology.num_features < 1) {
            throw std::invalid_argument("num_features must be >= 1");
        }
        if (topology.num_features > kMaxQubits) {
            throw std::invalid_argument("baseline needs one qubit per feature; max " +
                                        std::to_string(kMaxQubits));
        }
        if (feature_map_reps < 1 || ansatz_reps < 1) {
            throw std::invalid_argument("baseline repetition counts must be >= 1");
        }
    } else {
        topology.validate();
    }
}

Circuit build_cffqnn_circuit(const Topology& topology, const ParameterSet& params,
                             std::span<const double> features) {
    topology.validate();
    if (static_cast<int>(features.size()) != topology.num_features) {
        throw std::invalid_argument("feature vector length does not match topology");
    }
    const int first_width = topology.first_layer_width();
    if (static_cast<int>(params.encoding_weights.rows()) != first_width ||
        params.encoding_weights.cols() != features.size() + 1 ||
        params.hidden_thetas.size() != topology.layer_widths.size() - 1) {
        throw std::invalid_argument("parameter set is not shaped for this topology");
    }

    Circuit circuit(topology.total_qubits());

    // All N feature encodings on one qubit commute, so they collapse into a
    // single RY(b + sum W_i x_i) per first-layer qubit.
    for (int q = 0; q < first_width; ++q) {
        double z = params.encoding_weights(q, 0);
        for (std::size_t i = 0; i < features.size(); ++i) {
            z += params.encoding_weights(q, i + 1) * features[i];
        }
        circuit.ry(q, z);
    }

    for (std::size_t l = 0; l + 1 < topology.layer_widths.size(); ++l) {
        const Matrix& thetas = params.hidden_thetas[l];
        const int prev_width = topology.layer_widths[l];
        const int next_width = topology.layer_widths[l + 1];
        if (static_cast<int>(thetas.rows()) != next_width ||
            static_cast<int>(thetas.cols()) != prev_width + 1) {
            throw std::invalid_argument("hidden block " + std::to_string(l) +
                                        " is not shaped for this topology");
        }
        const int prev_base = topology.layer_start(l);
        const int next_base = topology.layer_start(l + 1);
        for (int j = 0; j < next_width; ++j) {
            circuit.ry(next_base + j, thetas(j, 0));
            for (int i = 0; i < prev_width; ++i) {
                circuit.cry(prev_base + i, next_base + j, thetas(j, i + 1));
            }
        }
    }
    return circuit;
}

void append_zz_feature_map(Circuit& circuit, std::span<const double> features, int reps) {
    const int n = circuit.num_qubits();
    if (static_cast<int>(features.size()) != n) {
        throw std::invalid_argument("feature map needs one feature per qubit");
    }
    if (reps < 1) throw std::invalid_argument("feature map reps must be >= 1");
    constexpr double pi = std::numbers::pi;
    for (int rep = 0; rep < reps; ++rep) {
        for (int q = 0; q < n; ++q) circuit.h(q);
        for (int q = 0; q < n; ++q) circuit.phase(q, 2.0 * features[q]);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                circuit.cnot(i, j);
                circuit.phase(j, 2.0 * (pi - features[i]) * (pi - features[j]));
                circuit.cnot(i, j);
            }
        }
    }
}

void append_real_amplitudes(Circuit& circuit, std::span<const double> thetas, int reps) {
    const int n = circuit.num_qubits();
    if (reps < 1) throw std::invalid_argument("ansatz reps must be >= 1");
    if (static_cast<int>(thetas.size()) != n * (reps + 1)) {
        throw std::invalid_argument("ansatz needs num_qubits * (reps + 1) angles");
    }
    std::size_t k = 0;
    for (int rep = 0; rep < reps; ++rep) {
        for (int q = 0; q < n; ++q) circuit.ry(q, thetas[k++]);
        for (int q = 0; q + 1 < n; ++q) circuit.cnot(q, q + 1);
    }
    for (int q = 0; q < n; ++q) circuit.ry(q, thetas[k++]);
}

Circuit build_qnn_circuit(int num_features, int feature_map_reps, int ansatz_reps,
                          std::span<const double> thetas,
                          std::span<const double> features) {
    if (static_cast<int>(features.size()) != num_features) {
        throw std::invalid_argument("feature vector length does not match num_features");
    }
    Circuit circuit(num_features);
    append_zz_feature_map(circuit, features, feature_map_reps);
    append_real_amplitudes(circuit, thetas, ansatz_reps);
    return circuit;
}

Circuit build_model_circuit(const ModelSpec& spec, std::span<const double> flat_params,
                            std::span<const double> features) {
    spec.validate();
    if (static_cast<int>(flat_params.size()) != total_parameter_count(spec)) {
        throw std::invalid_argument("flat parameter vector has " +
                                    std::to_string(flat_params.size()) +
                                    " values, expected " +
                                    std::to_string(total_parameter_count(spec)));
    }
    if (spec.kind == ModelKind::QnnBaseline) {
        return build_qnn_circuit(spec.topology.num_features, spec.feature_map_reps,
                                 spec.ansatz_reps, flat_params, features);
    }
    const ParameterSet params = ParameterSet::from_flat(spec.topology, flat_params);
    return build_cffqnn_circuit(spec.topology, params, features);
}

Prediction predict(const ModelSpec& spec, std::span<const double> flat_params,
                   std::span<const double> features) {
    const Circuit circuit = build_model_circuit(spec, flat_params, features);
    const StateVector state = run(circuit);

    double expectation = 0.0;
    if (spec.kind == ModelKind::FixedCffqnn) {
        std::vector<int> qubits;
        for (int q = spec.topology.first_layer_width(); q < spec.topology.total_qubits();
             ++q) {
            qubits.push_back(q);
        }
        expectation = expectation_z_product(state, qubits);
    } else {
        expectation = expectation_z(state, circuit.num_qubits() - 1);
    }
    return {expectation, expectation < 0.0 ? 1 : 0};
}

int trainable_parameter_count(const ModelSpec& spec) {
    spec.validate();
    if (spec.kind == ModelKind::QnnBaseline) {
        return spec.topology.num_features * (spec.ansatz_reps + 1);
    }
    int count = 0;
    for (std::size_t l = 0; l + 1 < spec.topology.layer_widths.size(); ++l) {
        count += spec.topology.layer_widths[l + 1] * (spec.topology.layer_widths[l] + 1);
    }
    if (spec.kind == ModelKind::Cffqnn) {
        count += spec.topology.first_layer_width() * (spec.topology.num_features + 1);
    }
    return count;
}

int total_parameter_count(const ModelSpec& spec) {
    int count = trainable_parameter_count(spec);
    if (spec.kind == ModelKind::FixedCffqnn) {
        count += spec.topology.first_layer_width() * (spec.topology.num_features + 1);
    }
    return count;
}

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<int> split_ints(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string token;
    while (std::getline(in, token, ',')) out.push_back(std::stoi(token));
    return out;
}

}  // namespace

void write_parameter_file(const std::filesystem::path& path, const ParameterFile& file) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "model " << file.model << "\n";
    if (!file.topology.empty()) out << "topology " << join_ints(file.topology) << "\n";
    if (file.num_features > 0) out << "features " << file.num_features << "\n";
    if (file.feature_map_reps > 0) out << "feature_map_reps " << file.feature_map_reps << "\n";
    if (file.ansatz_reps > 0) out << "ansatz_reps " << file.ansatz_reps << "\n";
    out << "seed " << file.seed << "\n";
    out << "digest " << hex64(file.data_digest) << "\n";
    out << "trainable " << file.trainable << "\n";
    out << "values " << file.values.size() << "\n";
    for (double v : file.values) out << format_double(v) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

ParameterFile read_parameter_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    ParameterFile file;
    std::string key;
    bool saw_values = false;
    while (in >> key) {
        if (key == "model") {
            in >> file.model;
        } else if (key == "topology") {
            std::string list;
            in >> list;
            file.topology = split_ints(list);
        } else if (key == "features") {
            in >> file.num_features;
        } else if (key == "feature_map_reps") {
            in >> file.feature_map_reps;
        } else if (key == "ansatz_reps") {
            in >> file.ansatz_reps;
        } else if (key == "seed") {
            in >> file.seed;
        } else if (key == "digest") {
            std::string hex;
            in >> hex;
            file.data_digest = std::stoull(hex, nullptr, 16);
        } else if (key == "trainable") {
            in >> file.trainable;
        } else if (key == "values") {
            std::size_t count = 0;
            in >> count;
            file.values.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                std::string token;
                if (!(in >> token)) {
                    throw std::runtime_error("parameter file truncated: " + path.string());
                }
                file.values[i] = parse_double(token);
            }
            saw_values = true;
            break;
        } else {
            throw std::runtime_error("unknown parameter file key '" + key + "' in " +
                                     path.string());
        }
        if (!in) throw std::runtime_error("malformed parameter file: " + path.string());
    }
    if (file.model.empty() || !saw_values) {
        throw std::runtime_error("incomplete parameter file: " + path.string());
    }
    return file;
}

ParameterFile make_parameter_file(const ModelSpec& spec, std::uint64_t seed,
                                  std::uint64_t data_digest, std::vector<double> values) {
    spec.validate();
    ParameterFile file;
    file.model = model_kind_name(spec.kind);
    if (spec.kind != ModelKind::QnnBaseline) file.topology = spec.topology.layer_widths;
    file.num_features = spec.topology.num_features;
    if (spec.kind == ModelKind::QnnBaseline) {
        file.feature_map_reps = spec.feature_map_reps;
        file.ansatz_reps = spec.ansatz_reps;
    }
    file.seed = seed;
    file.data_digest = data_digest;
    file.trainable = trainable_parameter_count(spec);
    file.values = std::move(values);
    return file;
}

ModelSpec model_spec_from_file(const ParameterFile& file) {
    ModelSpec spec;
    spec.kind = model_kind_from_name(file.model);
    spec.topology.num_features = file.num_features;
    if (spec.kind == ModelKind::QnnBaseline) {
        spec.feature_map_reps = file.feature_map_reps;
        spec.ansatz_reps = file.ansatz_reps;
    } else {
        spec.topology.layer_widths = file.topology;
    }
    spec.validate();
    return spec;
}

}  // namespace cffqnn
