#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cffqnn/dataset.hpp"
#include "cffqnn/metrics.hpp"
#include "cffqnn/mlp.hpp"
#include "cffqnn/models.hpp"
#include "cffqnn/optimize.hpp"
#include "cffqnn/rng.hpp"
#include "cffqnn/textio.hpp"

namespace fs = std::filesystem;
using namespace cffqnn;

namespace {

// Exit statuses: 0 success, 2 input error, 3 consistency error, 4 runtime or
// optimizer error.
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConsistency = 3;
constexpr int kExitRuntime = 4;

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_topology(const std::string& text) {
    std::vector<int> widths;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) widths.push_back(std::stoi(token));
    return widths;
}

std::string join_topology(const std::vector<int>& widths) {
    std::string out;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(widths[i]);
    }
    return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

/// Every run drops its fully-resolved configuration next to its outputs so
/// the run can be replayed with `cffqnn --config run.config <subcommand>`.
void write_run_config(const fs::path& dir, const std::string& subcommand,
                      const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ostringstream out;
    out << "[" << subcommand << "]\n";
    for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
    write_text_file(dir / "run.config", out.str());
}

struct PrepareOptions {
    std::string input;
    std::string label_column;
    std::string positive_label;
    bool balance_flag = false;
    int pca_k = 7;
    double train_fraction = 0.8;
    std::uint64_t seed = 42;
    std::string out_dir;
};

int cmd_prepare(const PrepareOptions& opt) {
    try {
        fs::create_directories(opt.out_dir);
        IngestReport ingest_report;
        const Dataset raw =
            ingest_csv(opt.input, opt.label_column, opt.positive_label, &ingest_report);
        const Dataset working =
            opt.balance_flag ? balance(raw, opt.seed + seed_offset::balance) : raw;
        const auto [train_set, test_set] =
            split(working, opt.train_fraction, opt.seed + seed_offset::split);

        const PcaTransform pca = pca_fit(train_set.features, opt.pca_k);
        const Matrix train_proj = pca_apply(pca, train_set.features);
        const Matrix test_proj = pca_apply(pca, test_set.features);
        const ScaledSplit scaled = scale_fit_apply(train_proj, test_proj);
        const std::uint64_t digest = transform_digest(pca, scaled.transform, opt.seed);

        const fs::path dir(opt.out_dir);
        write_prepared(dir / "train.dat",
                       {opt.pca_k, opt.seed, digest, scaled.train, train_set.labels});
        write_prepared(dir / "test.dat",
                       {opt.pca_k, opt.seed, digest, scaled.other, test_set.labels});

        std::ostringstream report;
        report << "rows_ingested " << ingest_report.rows_kept << "\n";
        report << "rows_skipped " << ingest_report.rows_skipped << "\n";
        report << "rows_after_balance " << working.rows() << "\n";
        report << "train_rows " << train_set.rows() << "\n";
        report << "test_rows " << test_set.rows() << "\n";
        report << "explained_variance";
        for (double v : pca.explained_variance) report << ' ' << format_double(v);
        report << "\n";
        report << "digest " << hex64(digest) << "\n";
        write_text_file(dir / "prepare_report.txt", report.str());

        write_run_config(dir, "prepare",
                         {{"input", opt.input},
                               {"label-column", opt.label_column},
                               {"positive-label", opt.positive_label},
                               {"balance", opt.balance_flag ? "true" : "false"},
                               {"pca-k", std::to_string(opt.pca_k)},
                               {"train-fraction", format_double(opt.train_fraction)},
                               {"seed", std::to_string(opt.seed)},
                               {"out", opt.out_dir}});
        std::cout << "prepared " << train_set.rows() << " train / " << test_set.rows()
                  << " test rows into " << opt.out_dir << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "prepare: " << e.what() << "\n";
        return kExitInput;
    }
}

struct TrainOptions {
    std::string train_file;
    std::string model = "CFFQNN";
    std::string topology = "3,2,1";
    int feature_map_reps = 2;
    int ansatz_reps = 2;
    int budget = 100;
    std::string loss = "bce";
    std::uint64_t seed = 42;
    double trust_region_initial = 0.5;
    double trust_region_final = 1e-4;
    std::string out_dir;
};

ModelSpec spec_from_options(const std::string& model, const std::string& topology,
                            int num_features, int feature_map_reps, int ansatz_reps) {
    ModelSpec spec;
    spec.kind = model_kind_from_name(model);
    spec.topology.num_features = num_features;
    spec.topology.layer_widths = parse_topology(topology);
    spec.feature_map_reps = feature_map_reps;
    spec.ansatz_reps = ansatz_reps;
    spec.validate();
    return spec;
}

std::string training_log_text(const TrainResult& result) {
    std::ostringstream log;
    log << "# optimizer linear-approximation trust-region (cobyla-class)\n";
    for (std::size_t i = 0; i < result.loss_log.size(); ++i) {
        log << i << ", " << format_double(result.loss_log[i]) << "\n";
    }
    log << "# wall_time_seconds " << format_double(result.wall_seconds) << "\n";
    return log.str();
}

int cmd_train(const TrainOptions& opt) {
    PreparedData prepared;
    ModelSpec spec;
    try {
        prepared = read_prepared(opt.train_file);
        spec = spec_from_options(opt.model, opt.topology, prepared.k,
                                 opt.feature_map_reps, opt.ansatz_reps);
        fs::create_directories(opt.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "train: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        TrainConfig config;
        config.iterations = opt.budget;
        config.seed = opt.seed;
        config.loss_kind = loss_kind_from_name(opt.loss);
        config.trust_region_initial = opt.trust_region_initial;
        config.trust_region_final = opt.trust_region_final;

        const TrainResult result = train(spec, to_dataset(prepared), config);

        const fs::path dir(opt.out_dir);
        write_parameter_file(
            dir / "params.txt",
            make_parameter_file(spec, opt.seed, prepared.digest, result.parameters));
        write_text_file(dir / "train_log.txt", training_log_text(result));
        write_run_config(dir, "train",
                         {{"train-file", opt.train_file},
                               {"model", opt.model},
                               {"topology", opt.topology},
                               {"feature-map-reps", std::to_string(opt.feature_map_reps)},
                               {"ansatz-reps", std::to_string(opt.ansatz_reps)},
                               {"budget", std::to_string(opt.budget)},
                               {"loss", opt.loss},
                               {"seed", std::to_string(opt.seed)},
                               {"trust-region-initial", format_double(opt.trust_region_initial)},
                               {"trust-region-final", format_double(opt.trust_region_final)},
                               {"out", opt.out_dir}});
        std::cout << "trained " << opt.model << " to loss "
                  << format_double(result.best_loss) << " in " << result.evaluations_used
                  << " evaluations\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "train: " << e.what() << "\n";
        return kExitRuntime;
    }
}

std::vector<int> predictions_for(const ParameterFile& params, const PreparedData& test) {
    std::vector<int> predictions(test.features.rows());
    if (params.model == "MLP") {
        const MlpModel model = mlp_from_flat(params.topology, params.values);
        for (std::size_t r = 0; r < test.features.rows(); ++r) {
            predictions[r] = mlp_forward(model, test.features.row(r)) >= 0.5 ? 1 : 0;
        }
        return predictions;
    }
    const ModelSpec spec = model_spec_from_file(params);
    for (std::size_t r = 0; r < test.features.rows(); ++r) {
        predictions[r] = predict(spec, params.values, test.features.row(r)).predicted_class;
    }
    return predictions;
}

void check_files_consistent(const ParameterFile& params, const PreparedData& test) {
    if (params.num_features != test.k) {
        throw ConsistencyError("parameter file was trained on " +
                               std::to_string(params.num_features) +
                               " features but the prepared file has k = " +
                               std::to_string(test.k));
    }
    if (params.data_digest != test.digest) {
        throw ConsistencyError(
            "transform digest mismatch: parameters carry " + hex64(params.data_digest) +
            ", prepared file carries " + hex64(test.digest));
    }
}

std::string metrics_record(const std::string& name, const MetricsReport& metrics,
                           const ResourceReport& resources) {
    ComparisonEntry entry;
    entry.name = name;
    entry.metrics = metrics;
    entry.resources = resources;
    const std::vector<ComparisonEntry> single{entry};
    std::ostringstream out;
    out << comparison_table(single);
    out << "tp " << metrics.counts.tp << "\n";
    out << "fp " << metrics.counts.fp << "\n";
    out << "tn " << metrics.counts.tn << "\n";
    out << "fn " << metrics.counts.fn << "\n";
    return out.str();
}

ResourceReport resources_for(const ParameterFile& params, int k) {
    if (params.model == "MLP") {
        ResourceReport report;
        report.trainable_parameters = static_cast<int>(params.values.size());
        return report;
    }
    const ModelSpec spec = model_spec_from_file(params);
    const std::vector<double> zeros(static_cast<std::size_t>(k), 0.0);
    const Circuit circuit = build_model_circuit(spec, params.values, zeros);
    return count_resources(circuit, trainable_parameter_count(spec));
}

struct EvaluateOptions {
    std::string params_file;
    std::string test_file;
    std::string out_dir;
};

int cmd_evaluate(const EvaluateOptions& opt) {
    ParameterFile params;
    PreparedData test;
    try {
        params = read_parameter_file(opt.params_file);
        test = read_prepared(opt.test_file);
        fs::create_directories(opt.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "evaluate: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        check_files_consistent(params, test);
        const std::vector<int> predictions = predictions_for(params, test);
        const MetricsReport metrics = compute_metrics(confusion(predictions, test.labels));
        const ResourceReport resources = resources_for(params, test.k);

        const fs::path dir(opt.out_dir);
        write_text_file(dir / "metrics.txt", metrics_record(params.model, metrics, resources));
        write_run_config(dir, "evaluate",
                         {{"params", opt.params_file},
                               {"test-file", opt.test_file},
                               {"out", opt.out_dir}});
        std::cout << metrics_record(params.model, metrics, resources);
        return kExitOk;
    } catch (const ConsistencyError& e) {
        std::cerr << "evaluate: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const std::exception& e) {
        std::cerr << "evaluate: " << e.what() << "\n";
        return kExitRuntime;
    }
}

struct CompareOptions {
    std::string train_file;
    std::string test_file;
    std::string topology = "3,2,1";
    int feature_map_reps = 2;
    int ansatz_reps = 2;
    int budget = 100;
    std::string loss = "bce";
    std::uint64_t seed = 42;
    double trust_region_initial = 0.5;
    double trust_region_final = 1e-4;
    int mlp_epochs = 2000;
    double mlp_lr = 0.5;
    std::string out_dir;
};

ComparisonEntry run_quantum_entry(const std::string& name, const ModelSpec& spec,
                                  const CompareOptions& opt, const PreparedData& train_set,
                                  const PreparedData& test_set) {
    ComparisonEntry entry;
    entry.name = name;
    try {
        TrainConfig config;
        config.iterations = opt.budget;
        config.seed = opt.seed;
        config.loss_kind = loss_kind_from_name(opt.loss);
        config.trust_region_initial = opt.trust_region_initial;
        config.trust_region_final = opt.trust_region_final;
        const TrainResult result = train(spec, to_dataset(train_set), config);

        const fs::path dir = fs::path(opt.out_dir) / name;
        fs::create_directories(dir);
        const ParameterFile params =
            make_parameter_file(spec, opt.seed, train_set.digest, result.parameters);
        write_parameter_file(dir / "params.txt", params);
        write_text_file(dir / "train_log.txt", training_log_text(result));

        const std::vector<int> predictions = predictions_for(params, test_set);
        entry.metrics = compute_metrics(confusion(predictions, test_set.labels));
        entry.resources = resources_for(params, test_set.k);
        entry.resources.wall_time_seconds = result.wall_seconds;
        write_text_file(dir / "metrics.txt",
                        metrics_record(name, entry.metrics, entry.resources));
    } catch (const std::exception& e) {
        entry.failed = true;
        entry.error = e.what();
        std::cerr << "compare: " << name << " failed: " << e.what() << "\n";
    }
    return entry;
}

ComparisonEntry run_mlp_entry(const CompareOptions& opt, const PreparedData& train_set,
                              const PreparedData& test_set) {
    ComparisonEntry entry;
    entry.name = "MLP";
    try {
        // Same layer structure as the quantum topology, with the feature
        // count as the input width.
        std::vector<int> widths{train_set.k};
        for (int w : parse_topology(opt.topology)) widths.push_back(w);

        const auto start = std::chrono::steady_clock::now();
        MlpModel model;
        model.layer_widths = widths;
        model = mlp_train(model, to_dataset(train_set), opt.mlp_epochs, opt.mlp_lr,
                          opt.seed + seed_offset::init);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        ParameterFile params;
        params.model = "MLP";
        params.topology = widths;
        params.num_features = train_set.k;
        params.seed = opt.seed;
        params.data_digest = train_set.digest;
        params.values = mlp_flatten(model);
        params.trainable = static_cast<int>(params.values.size());

        const fs::path dir = fs::path(opt.out_dir) / "MLP";
        fs::create_directories(dir);
        write_parameter_file(dir / "params.txt", params);

        const std::vector<int> predictions = predictions_for(params, test_set);
        entry.metrics = compute_metrics(confusion(predictions, test_set.labels));
        entry.resources.trainable_parameters = params.trainable;
        entry.resources.wall_time_seconds = wall;
        write_text_file(dir / "metrics.txt",
                        metrics_record("MLP", entry.metrics, entry.resources));
    } catch (const std::exception& e) {
        entry.failed = true;
        entry.error = e.what();
        std::cerr << "compare: MLP failed: " << e.what() << "\n";
    }
    return entry;
}

int cmd_compare(const CompareOptions& opt) {
    PreparedData train_set, test_set;
    try {
        train_set = read_prepared(opt.train_file);
        test_set = read_prepared(opt.test_file);
        if (train_set.digest != test_set.digest) {
            throw std::runtime_error("train and test files come from different prepare runs");
        }
        fs::create_directories(opt.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "compare: " << e.what() << "\n";
        return kExitInput;
    }

    const int k = train_set.k;
    const ModelSpec cffqnn =
        spec_from_options("CFFQNN", opt.topology, k, opt.feature_map_reps, opt.ansatz_reps);
    const ModelSpec fixed = spec_from_options("FIXED_CFFQNN", opt.topology, k,
                                              opt.feature_map_reps, opt.ansatz_reps);
    ModelSpec qnn;
    qnn.kind = ModelKind::QnnBaseline;
    qnn.topology.num_features = k;
    qnn.feature_map_reps = opt.feature_map_reps;
    qnn.ansatz_reps = opt.ansatz_reps;
    qnn.validate();

    // "QNN35": raise the ansatz repetitions until the baseline has at least
    // as many trainable parameters as the CFFQNN.
    ModelSpec qnn_extra = qnn;
    const int target = trainable_parameter_count(cffqnn);
    while (trainable_parameter_count(qnn_extra) < target) ++qnn_extra.ansatz_reps;

    std::vector<ComparisonEntry> entries;
    entries.push_back(run_mlp_entry(opt, train_set, test_set));
    entries.push_back(run_quantum_entry("CFFQNN", cffqnn, opt, train_set, test_set));
    entries.push_back(run_quantum_entry("FixedCFFQNN", fixed, opt, train_set, test_set));
    entries.push_back(run_quantum_entry("QNN", qnn, opt, train_set, test_set));
    entries.push_back(run_quantum_entry("QNN35", qnn_extra, opt, train_set, test_set));

    try {
        const fs::path dir(opt.out_dir);
        write_text_file(dir / "comparison.txt", comparison_table(entries));
        write_text_file(dir / "comparison.csv", comparison_csv(entries));
        write_run_config(dir, "compare",
                         {{"train-file", opt.train_file},
                               {"test-file", opt.test_file},
                               {"topology", opt.topology},
                               {"feature-map-reps", std::to_string(opt.feature_map_reps)},
                               {"ansatz-reps", std::to_string(opt.ansatz_reps)},
                               {"budget", std::to_string(opt.budget)},
                               {"loss", opt.loss},
                               {"seed", std::to_string(opt.seed)},
                               {"trust-region-initial", format_double(opt.trust_region_initial)},
                               {"trust-region-final", format_double(opt.trust_region_final)},
                               {"mlp-epochs", std::to_string(opt.mlp_epochs)},
                               {"mlp-lr", format_double(opt.mlp_lr)},
                               {"out", opt.out_dir}});
        std::cout << comparison_table(entries);
    } catch (const std::exception& e) {
        std::cerr << "compare: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

struct ResourcesOptions {
    std::string model = "CFFQNN";
    int features = 7;
    std::string topology = "3,2,1";
    int feature_map_reps = 2;
    int ansatz_reps = 2;
    std::string dump_circuit;
};

int cmd_resources(const ResourcesOptions& opt) {
    try {
        const ModelSpec spec = spec_from_options(opt.model, opt.topology, opt.features,
                                                 opt.feature_map_reps, opt.ansatz_reps);
        const std::vector<double> params(
            static_cast<std::size_t>(total_parameter_count(spec)), 0.0);
        const std::vector<double> features(static_cast<std::size_t>(opt.features), 0.0);
        const Circuit circuit = build_model_circuit(spec, params, features);
        const ResourceReport report =
            count_resources(circuit, trainable_parameter_count(spec));

        std::cout << "model " << opt.model << "\n";
        std::cout << "qubits " << circuit.num_qubits() << "\n";
        std::cout << "depth " << report.depth << "\n";
        std::cout << "native_controlled_ops " << report.native_controlled_ops << "\n";
        std::cout << "cnot_equivalent " << report.cnot_equivalent << "\n";
        std::cout << "entangling_pairs " << report.entangling_pairs << "\n";
        std::cout << "single_qubit_gates " << report.single_qubit_gates << "\n";
        std::cout << "trainable_parameters " << report.trainable_parameters << "\n";
        if (!opt.dump_circuit.empty()) {
            write_text_file(opt.dump_circuit, circuit_to_text(circuit));
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "resources: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid quantum-classical classification workbench"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read flags from a line-oriented key = value file");

    PrepareOptions prepare_opt;
    CLI::App* prepare = app.add_subcommand("prepare", "Ingest a CSV and emit prepared train/test files");
    prepare->add_option("--input", prepare_opt.input, "Input CSV path")->required();
    prepare->add_option("--label-column", prepare_opt.label_column, "Label column name")->required();
    prepare->add_option("--positive-label", prepare_opt.positive_label, "Value of the positive class")->required();
    prepare->add_flag("--balance", prepare_opt.balance_flag, "Undersample the majority class");
    prepare->add_option("--pca-k", prepare_opt.pca_k, "Principal components to keep")->capture_default_str();
    prepare->add_option("--train-fraction", prepare_opt.train_fraction, "Train split fraction")->capture_default_str();
    prepare->add_option("--seed", prepare_opt.seed, "Seed for balancing and splitting")->capture_default_str();
    prepare->add_option("--out", prepare_opt.out_dir, "Output directory")->required();

    TrainOptions train_opt;
    CLI::App* train_cmd = app.add_subcommand("train", "Train a model on a prepared train file");
    train_cmd->add_option("--train-file", train_opt.train_file, "Prepared train file")->required();
    train_cmd->add_option("--model", train_opt.model, "CFFQNN | FIXED_CFFQNN | QNN_BASELINE")->capture_default_str();
    train_cmd->add_option("--topology", train_opt.topology, "Comma-separated layer widths")->capture_default_str();
    train_cmd->add_option("--feature-map-reps", train_opt.feature_map_reps, "ZZ feature map repetitions")->capture_default_str();
    train_cmd->add_option("--ansatz-reps", train_opt.ansatz_reps, "RealAmplitudes repetitions")->capture_default_str();
    train_cmd->add_option("--budget", train_opt.budget, "Optimizer evaluation budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->add_option("--loss", train_opt.loss, "bce | squared")->capture_default_str();
    train_cmd->add_option("--seed", train_opt.seed, "Seed for initialization")->capture_default_str();
    train_cmd->add_option("--trust-region-initial", train_opt.trust_region_initial, "Initial trust-region radius")->capture_default_str();
    train_cmd->add_option("--trust-region-final", train_opt.trust_region_final, "Final trust-region radius")->capture_default_str();
    train_cmd->add_option("--out", train_opt.out_dir, "Output directory")->required();

    EvaluateOptions eval_opt;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Score a parameter file on a prepared test file");
    evaluate->add_option("--params", eval_opt.params_file, "Parameter file")->required();
    evaluate->add_option("--test-file", eval_opt.test_file, "Prepared test file")->required();
    evaluate->add_option("--out", eval_opt.out_dir, "Output directory")->required();

    CompareOptions compare_opt;
    CLI::App* compare = app.add_subcommand("compare", "Train and evaluate the full model lineup");
    compare->add_option("--train-file", compare_opt.train_file, "Prepared train file")->required();
    compare->add_option("--test-file", compare_opt.test_file, "Prepared test file")->required();
    compare->add_option("--topology", compare_opt.topology, "CFFQNN layer widths")->capture_default_str();
    compare->add_option("--feature-map-reps", compare_opt.feature_map_reps, "ZZ feature map repetitions")->capture_default_str();
    compare->add_option("--ansatz-reps", compare_opt.ansatz_reps, "RealAmplitudes repetitions")->capture_default_str();
    compare->add_option("--budget", compare_opt.budget, "Optimizer evaluation budget per model")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare->add_option("--loss", compare_opt.loss, "bce | squared")->capture_default_str();
    compare->add_option("--seed", compare_opt.seed, "Shared seed")->capture_default_str();
    compare->add_option("--trust-region-initial", compare_opt.trust_region_initial, "Initial trust-region radius")->capture_default_str();
    compare->add_option("--trust-region-final", compare_opt.trust_region_final, "Final trust-region radius")->capture_default_str();
    compare->add_option("--mlp-epochs", compare_opt.mlp_epochs, "MLP gradient-descent epochs")->capture_default_str();
    compare->add_option("--mlp-lr", compare_opt.mlp_lr, "MLP learning rate")->capture_default_str();
    compare->add_option("--out", compare_opt.out_dir, "Output directory")->required();

    ResourcesOptions res_opt;
    CLI::App* resources = app.add_subcommand("resources", "Print the resource report for a model spec");
    resources->add_option("--model", res_opt.model, "CFFQNN | FIXED_CFFQNN | QNN_BASELINE")->capture_default_str();
    resources->add_option("--features", res_opt.features, "Feature count")->capture_default_str();
    resources->add_option("--topology", res_opt.topology, "CFFQNN layer widths")->capture_default_str();
    resources->add_option("--feature-map-reps", res_opt.feature_map_reps, "ZZ feature map repetitions")->capture_default_str();
    resources->add_option("--ansatz-reps", res_opt.ansatz_reps, "RealAmplitudes repetitions")->capture_default_str();
    resources->add_option("--dump-circuit", res_opt.dump_circuit, "Write the circuit text format here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (prepare->parsed()) return cmd_prepare(prepare_opt);
    if (train_cmd->parsed()) return cmd_train(train_opt);
    if (evaluate->parsed()) return cmd_evaluate(eval_opt);
    if (compare->parsed()) return cmd_compare(compare_opt);
    if (resources->parsed()) return cmd_resources(res_opt);
    return kExitInput;
}
