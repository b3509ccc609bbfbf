#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cffqnn/models.hpp"
#include "test_util.hpp"

using namespace cffqnn;
using std::numbers::pi;

namespace {

int count_kind(const Circuit& circuit, GateKind kind) {
    return static_cast<int>(std::count_if(
        circuit.ops().begin(), circuit.ops().end(),
        [kind](const GateOp& op) { return op.kind == kind; }));
}

ModelSpec cffqnn_321(ModelKind kind = ModelKind::Cffqnn) {
    ModelSpec spec;
    spec.kind = kind;
    spec.topology = Topology{{3, 2, 1}, 7};
    return spec;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("all-zero [1,1] model is the identity") {
    Topology topology{{1, 1}, 1};
    const ParameterSet params = ParameterSet::zeros(topology);
    const std::vector<double> features{0.7};
    const Circuit circuit = build_cffqnn_circuit(topology, params, features);
    REQUIRE(circuit.ops().size() == 3);  // encoding RY, bias RY, one CRY
    CHECK(circuit.ops()[0].kind == GateKind::Ry);
    CHECK(circuit.ops()[1].kind == GateKind::Ry);
    CHECK(circuit.ops()[2].kind == GateKind::Cry);

    ModelSpec spec;
    spec.kind = ModelKind::Cffqnn;
    spec.topology = topology;
    const auto result = predict(spec, ParameterSet::zeros(topology).to_flat(), features);
    CHECK(result.expectation == doctest::Approx(1.0));
    CHECK(result.predicted_class == 0);
}

TEST_CASE("3-2-1 circuit has 3 encodings, 3 biases, and 8 CRYs") {
    Topology topology{{3, 2, 1}, 7};
    const ParameterSet params = ParameterSet::zeros(topology);
    const Circuit circuit =
        build_cffqnn_circuit(topology, params, std::vector<double>(7, 0.3));
    CHECK(circuit.num_qubits() == 6);
    CHECK(count_kind(circuit, GateKind::Ry) == 6);   // 3 encodings + 3 biases
    CHECK(count_kind(circuit, GateKind::Cry) == 8);  // 3*2 + 2*1
}

TEST_CASE("one-qubit encoding gives <Z> = cos(wx + b)") {
    const double w = 1.7, x = 0.45, b = -0.3;
    Topology topology{{1, 1}, 1};
    ParameterSet params = ParameterSet::zeros(topology);
    params.encoding_weights(0, 0) = b;
    params.encoding_weights(0, 1) = w;
    const std::vector<double> features{x};
    const StateVector state = run(build_cffqnn_circuit(topology, params, features));
    CHECK(expectation_z(state, 0) == doctest::Approx(std::cos(w * x + b)).epsilon(1e-12));
}

TEST_CASE("[1,1] with theta = pi balances the output qubit at z = pi/2") {
    // Branch oracle: control is |0> with p = cos^2(pi/4) = 1/2 (target stays
    // |0>, Z = +1) and |1> with p = 1/2 (target flips, Z = -1), so <Z> = 0.
    Topology topology{{1, 1}, 1};
    ParameterSet params = ParameterSet::zeros(topology);
    params.encoding_weights(0, 1) = 1.0;       // z = x
    params.hidden_thetas[0](0, 1) = pi;        // theta_11
    ModelSpec spec;
    spec.kind = ModelKind::Cffqnn;
    spec.topology = topology;
    const std::vector<double> features{pi / 2.0};
    const auto result = predict(spec, params.to_flat(), features);
    CHECK(result.expectation == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(result.predicted_class == 0);  // ties resolve to class 0
}

TEST_CASE("trainable parameter counts match the formulas") {
    CHECK(trainable_parameter_count(cffqnn_321()) == 35);  // 3*8 + 2*4 + 1*3
    CHECK(trainable_parameter_count(cffqnn_321(ModelKind::FixedCffqnn)) == 11);
    CHECK(total_parameter_count(cffqnn_321(ModelKind::FixedCffqnn)) == 35);

    ModelSpec qnn;
    qnn.kind = ModelKind::QnnBaseline;
    qnn.topology.num_features = 7;
    qnn.ansatz_reps = 2;
    CHECK(trainable_parameter_count(qnn) == 21);
    qnn.ansatz_reps = 4;
    CHECK(trainable_parameter_count(qnn) == 35);
}

TEST_CASE("ZZ feature map structure") {
    const std::vector<double> features{0.2, 1.1, 2.3};
    Circuit circuit(3);
    append_zz_feature_map(circuit, features, 1);
    CHECK(count_kind(circuit, GateKind::Cnot) == 6);  // two per pair block
    CHECK(count_resources(circuit, 0).entangling_pairs == 3);  // N(N-1)/2

    // Pair phase angle is 2(pi - x_i)(pi - x_j); at x_i = x_j = pi it vanishes.
    Circuit degenerate(2);
    append_zz_feature_map(degenerate, std::vector<double>{pi, pi}, 1);
    bool found_pair_phase = false;
    for (std::size_t i = 0; i < degenerate.ops().size(); ++i) {
        const GateOp& op = degenerate.ops()[i];
        if (op.kind == GateKind::Phase && i > 0 &&
            degenerate.ops()[i - 1].kind == GateKind::Cnot) {
            CHECK(op.angle == 0.0);
            found_pair_phase = true;
        }
    }
    CHECK(found_pair_phase);
}

TEST_CASE("RealAmplitudes ansatz controlled-op count") {
    Circuit circuit(7);
    append_real_amplitudes(circuit, std::vector<double>(21, 0.1), 2);
    CHECK(count_kind(circuit, GateKind::Cnot) == 12);  // 2(N-1)
    CHECK(count_kind(circuit, GateKind::Ry) == 21);
}

TEST_CASE("qnn circuit validates parameter shape") {
    const std::vector<double> features(3, 0.5);
    CHECK_THROWS_AS(
        build_qnn_circuit(3, 1, 2, std::vector<double>(7, 0.0), features),
        std::invalid_argument);
    CHECK_THROWS_AS(
        build_qnn_circuit(3, 1, 2, std::vector<double>(9, 0.0), std::vector<double>(2, 0.5)),
        std::invalid_argument);
    CHECK_NOTHROW(
        build_qnn_circuit(3, 1, 2, std::vector<double>(9, 0.0), features));
}

TEST_CASE("permuting features together with weights changes nothing") {
    Topology topology{{2, 1}, 4};
    Rng rng(3);
    ParameterSet params = ParameterSet::zeros(topology);
    for (double& v : params.encoding_weights.data()) v = rng.uniform(-1.0, 1.0);
    for (double& v : params.hidden_thetas[0].data()) v = rng.uniform(-1.0, 1.0);
    std::vector<double> features{0.3, 1.4, 2.2, 0.9};

    ModelSpec spec;
    spec.kind = ModelKind::Cffqnn;
    spec.topology = topology;
    const double base = predict(spec, params.to_flat(), features).expectation;

    // Reverse the feature order along with every weight column.
    ParameterSet permuted = params;
    for (std::size_t q = 0; q < 2; ++q) {
        for (std::size_t i = 0; i < 4; ++i) {
            permuted.encoding_weights(q, 1 + i) = params.encoding_weights(q, 4 - i);
        }
    }
    std::reverse(features.begin(), features.end());
    const double swapped = predict(spec, permuted.to_flat(), features).expectation;
    CHECK(swapped == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("permuting the CRY feed order of a hidden qubit changes nothing") {
    Topology topology{{3, 1}, 2};
    Rng rng(13);
    ParameterSet params = ParameterSet::zeros(topology);
    for (double& v : params.encoding_weights.data()) v = rng.uniform(-1.0, 1.0);
    for (double& v : params.hidden_thetas[0].data()) v = rng.uniform(-1.0, 1.0);
    const std::vector<double> features{0.8, 1.9};

    const Circuit built = build_cffqnn_circuit(topology, params, features);
    Circuit permuted(built.num_qubits());
    // Keep the single-qubit prefix, reverse the trailing CRY block.
    std::vector<GateOp> crys;
    for (const GateOp& op : built.ops()) {
        if (op.kind == GateKind::Cry) crys.push_back(op);
        else permuted.add(op);
    }
    for (auto it = crys.rbegin(); it != crys.rend(); ++it) permuted.add(*it);

    const StateVector a = run(built);
    const StateVector b = run(permuted);
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-12);
    }
}

TEST_CASE("[2,1] prediction matches the analytic four-branch oracle") {
    Topology topology{{2, 1}, 3};
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        ParameterSet params = ParameterSet::zeros(topology);
        for (double& v : params.encoding_weights.data()) v = rng.uniform(-1.5, 1.5);
        for (double& v : params.hidden_thetas[0].data()) v = rng.uniform(-1.5, 1.5);
        std::vector<double> features{rng.uniform(0.0, pi), rng.uniform(0.0, pi),
                                     rng.uniform(0.0, pi)};

        // Encoding angles per first-layer qubit.
        double z[2];
        for (int q = 0; q < 2; ++q) {
            z[q] = params.encoding_weights(q, 0);
            for (int i = 0; i < 3; ++i) z[q] += params.encoding_weights(q, i + 1) * features[i];
        }
        const Matrix& th = params.hidden_thetas[0];
        double expected = 0.0;
        for (int b0 = 0; b0 < 2; ++b0) {
            for (int b1 = 0; b1 < 2; ++b1) {
                const double p0 = b0 ? std::sin(z[0] / 2.0) : std::cos(z[0] / 2.0);
                const double p1 = b1 ? std::sin(z[1] / 2.0) : std::cos(z[1] / 2.0);
                const double weight = p0 * p0 * p1 * p1;
                const double angle = th(0, 0) + b0 * th(0, 1) + b1 * th(0, 2);
                expected += weight * std::cos(angle);
            }
        }

        ModelSpec spec;
        spec.kind = ModelKind::Cffqnn;
        spec.topology = topology;
        const auto result = predict(spec, params.to_flat(), features);
        CHECK(result.expectation == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("fixed variant reads parity over the non-encoding qubits") {
    Topology topology{{2, 1}, 2};
    ModelSpec spec;
    spec.kind = ModelKind::FixedCffqnn;
    spec.topology = topology;
    Rng rng(43);
    std::vector<double> flat(static_cast<std::size_t>(total_parameter_count(spec)));
    for (double& v : flat) v = rng.uniform(-1.0, 1.0);
    const std::vector<double> features{1.2, 0.4};

    const StateVector state = run(build_model_circuit(spec, flat, features));
    const std::vector<int> tail{2};  // all qubits except the 2-qubit first layer
    const double expected = expectation_z_product(state, tail);
    CHECK(predict(spec, flat, features).expectation ==
          doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("baseline gate counts do not depend on the data") {
    ModelSpec spec;
    spec.kind = ModelKind::QnnBaseline;
    spec.topology.num_features = 4;
    const std::vector<double> thetas(12, 0.3);
    const Circuit a = build_model_circuit(spec, thetas, std::vector<double>{0.0, 0.1, 0.2, 0.3});
    const Circuit b = build_model_circuit(spec, thetas, std::vector<double>{2.9, 1.4, 0.6, 2.2});
    REQUIRE(a.ops().size() == b.ops().size());
    for (std::size_t i = 0; i < a.ops().size(); ++i) {
        CHECK(a.ops()[i].kind == b.ops()[i].kind);
        CHECK(a.ops()[i].target == b.ops()[i].target);
    }
}

TEST_CASE("flattening round-trips losslessly in a stable order") {
    Topology topology{{3, 2, 1}, 7};
    Rng rng(59);
    ParameterSet params = ParameterSet::zeros(topology);
    for (double& v : params.encoding_weights.data()) v = rng.uniform(-2.0, 2.0);
    for (Matrix& block : params.hidden_thetas) {
        for (double& v : block.data()) v = rng.uniform(-2.0, 2.0);
    }
    const std::vector<double> flat = params.to_flat();
    REQUIRE(flat.size() == 35);
    CHECK(flat[0] == params.encoding_weights(0, 0));
    CHECK(flat[24] == params.hidden_thetas[0](0, 0));  // first hidden block
    CHECK(flat[32] == params.hidden_thetas[1](0, 0));  // output block

    const ParameterSet back = ParameterSet::from_flat(topology, flat);
    CHECK(back.to_flat() == flat);
}

TEST_CASE("parameter files round-trip exactly") {
    const auto dir = testutil::fresh_temp_dir("params");
    ModelSpec spec = cffqnn_321(ModelKind::FixedCffqnn);
    Rng rng(67);
    std::vector<double> values(35);
    for (double& v : values) v = rng.uniform(-pi, pi);

    const ParameterFile file = make_parameter_file(spec, 42, 0xabcdef0123456789ULL, values);
    CHECK(file.trainable == 11);
    write_parameter_file(dir / "p.txt", file);
    const ParameterFile loaded = read_parameter_file(dir / "p.txt");
    CHECK(loaded.model == "FIXED_CFFQNN");
    CHECK(loaded.topology == std::vector<int>{3, 2, 1});
    CHECK(loaded.num_features == 7);
    CHECK(loaded.seed == 42);
    CHECK(loaded.data_digest == 0xabcdef0123456789ULL);
    CHECK(loaded.values == values);

    const ModelSpec back = model_spec_from_file(loaded);
    CHECK(back.kind == ModelKind::FixedCffqnn);
    CHECK(back.topology.layer_widths == spec.topology.layer_widths);
}

TEST_CASE("shape validation") {
    Topology bad{{3, 2}, 7};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // last width != 1
    Topology single{{1}, 7};
    CHECK_THROWS_AS(single.validate(), std::invalid_argument);
    Topology huge{{9, 3, 1}, 7};
    CHECK_THROWS_AS(huge.validate(), std::invalid_argument);  // 13 qubits

    Topology topology{{1, 1}, 2};
    const ParameterSet params = ParameterSet::zeros(topology);
    CHECK_THROWS_AS(
        build_cffqnn_circuit(topology, params, std::vector<double>{0.1}),
        std::invalid_argument);
    CHECK_THROWS_AS(ParameterSet::from_flat(topology, std::vector<double>(4, 0.0)),
                    std::invalid_argument);
}

}  // TEST_SUITE
