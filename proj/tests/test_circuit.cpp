#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cffqnn/circuit.hpp"
#include "cffqnn/models.hpp"
#include "test_util.hpp"

using namespace cffqnn;
using std::numbers::pi;

TEST_SUITE("circuit") {

TEST_CASE("empty circuit leaves |0...0>") {
    const StateVector state = run(Circuit(2));
    CHECK(state.amplitudes[0].real() == 1.0);
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(state.amplitudes[i]) == 0.0);
}

TEST_CASE("H plus CNOT builds the Bell state") {
    Circuit circuit(2);
    circuit.h(0);
    circuit.cnot(0, 1);
    const StateVector state = run(circuit);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(state.amplitudes[0] - inv_sqrt2) < 1e-15);
    CHECK(std::abs(state.amplitudes[1]) == 0.0);
    CHECK(std::abs(state.amplitudes[2]) == 0.0);
    CHECK(std::abs(state.amplitudes[3] - inv_sqrt2) < 1e-15);
}

TEST_CASE("split encoding rotations reach |1> at z = pi") {
    // Two RYs summing to pi stand in for the collapsed encoding gate.
    Circuit circuit(1);
    circuit.ry(0, 0.4 * pi);
    circuit.ry(0, 0.6 * pi);
    const StateVector state = run(circuit);
    CHECK(std::abs(state.amplitudes[0]) < 1e-15);
    CHECK(std::abs(state.amplitudes[1] - 1.0) < 1e-15);
}

TEST_CASE("depth counts greedy disjoint-support layers") {
    CHECK(depth(Circuit(3)) == 0);

    Circuit parallel(2);
    parallel.ry(0, 0.1);
    parallel.ry(1, 0.2);
    CHECK(depth(parallel) == 1);

    Circuit serial(2);
    serial.ry(0, 0.1);
    serial.ry(0, 0.2);
    CHECK(depth(serial) == 2);

    Circuit mixed(3);
    mixed.cry(0, 1, 0.3);
    mixed.ry(2, 0.4);   // disjoint from the CRY
    mixed.cnot(1, 2);   // blocked by both
    CHECK(depth(mixed) == 2);
}

TEST_CASE("depth is bounded by op count and stable under qubit relabeling") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit circuit = testutil::random_circuit(rng, 4, 30);
        const int d = depth(circuit);
        CHECK(d <= static_cast<int>(circuit.ops().size()));

        // Reverse the qubit labels consistently.
        Circuit relabeled(4);
        for (GateOp op : circuit.ops()) {
            op.target = 3 - op.target;
            if (op.has_control()) op.control = 3 - op.control;
            relabeled.add(op);
        }
        CHECK(depth(relabeled) == d);
    }
}

TEST_CASE("resource counts for the paper's three circuit families") {
    // ZZ feature map, 7 features, one repetition, full entanglement.
    Circuit feature_map(7);
    const std::vector<double> features(7, 0.5);
    append_zz_feature_map(feature_map, features, 1);
    const ResourceReport fm = count_resources(feature_map, 0);
    CHECK(fm.entangling_pairs == 21);  // N(N-1)/2
    CHECK(fm.native_controlled_ops == 42);  // two CNOTs per pair block
    CHECK(fm.cnot_equivalent == 42);
    CHECK(fm.single_qubit_gates == 7 + 7 + 21);

    // RealAmplitudes on 7 qubits with two repetitions.
    Circuit ansatz(7);
    const std::vector<double> thetas(7 * 3, 0.1);
    append_real_amplitudes(ansatz, thetas, 2);
    const ResourceReport ra = count_resources(ansatz, 21);
    CHECK(ra.native_controlled_ops == 12);  // 2(N-1)
    CHECK(ra.cnot_equivalent == 12);
    CHECK(ra.trainable_parameters == 21);

    // CFFQNN 3-2-1.
    Topology topology{{3, 2, 1}, 7};
    const ParameterSet params = ParameterSet::zeros(topology);
    const Circuit cffqnn =
        build_cffqnn_circuit(topology, params, std::vector<double>(7, 0.0));
    const ResourceReport cf = count_resources(cffqnn, 35);
    CHECK(cf.native_controlled_ops == 8);  // 3*2 + 2*1 CRYs
    CHECK(cf.cnot_equivalent == 16);       // CRY = 2 CNOTs
    CHECK(cf.entangling_pairs == 8);
}

TEST_CASE("resource counting is syntactic") {
    Rng rng(17);
    Circuit a(4), b(4);
    for (int i = 0; i < 25; ++i) {
        const Circuit source = testutil::random_circuit(rng, 4, 1);
        GateOp op = source.ops()[0];
        a.add(op);
        op.angle += rng.uniform(-1.0, 1.0);
        b.add(op);
    }
    const ResourceReport ra = count_resources(a, 3);
    const ResourceReport rb = count_resources(b, 3);
    CHECK(ra.depth == rb.depth);
    CHECK(ra.native_controlled_ops == rb.native_controlled_ops);
    CHECK(ra.cnot_equivalent == rb.cnot_equivalent);
    CHECK(ra.single_qubit_gates == rb.single_qubit_gates);
    CHECK(ra.cnot_equivalent >= ra.native_controlled_ops);
}

TEST_CASE("running a concatenation equals sequential application") {
    Rng rng(29);
    const Circuit first = testutil::random_circuit(rng, 3, 20);
    const Circuit second = testutil::random_circuit(rng, 3, 20);

    Circuit combined(3);
    for (const GateOp& op : first.ops()) combined.add(op);
    for (const GateOp& op : second.ops()) combined.add(op);

    StateVector sequential = run(first);
    for (const GateOp& op : second.ops()) apply_gate(sequential, op);

    const StateVector merged = run(combined);
    for (std::size_t i = 0; i < merged.amplitudes.size(); ++i) {
        CHECK(std::abs(merged.amplitudes[i] - sequential.amplitudes[i]) < 1e-12);
    }
}

TEST_CASE("text format round-trips and matches the golden layout") {
    Circuit circuit(3);
    circuit.h(0);
    circuit.ry(1, 0.5);
    circuit.cry(0, 2, -1.25);
    circuit.cnot(1, 2);
    circuit.phase(2, pi);

    const std::string text = circuit_to_text(circuit);
    CHECK(text ==
          "qubits 3\n"
          "H 0\n"
          "RY 1 0.5\n"
          "CRY 2 0 -1.25\n"
          "CNOT 2 1\n"
          "PHASE 2 3.1415926535897931\n");

    const Circuit parsed = circuit_from_text(text);
    REQUIRE(parsed.ops().size() == circuit.ops().size());
    for (std::size_t i = 0; i < parsed.ops().size(); ++i) {
        CHECK(parsed.ops()[i].kind == circuit.ops()[i].kind);
        CHECK(parsed.ops()[i].target == circuit.ops()[i].target);
        CHECK(parsed.ops()[i].control == circuit.ops()[i].control);
        CHECK(parsed.ops()[i].angle == circuit.ops()[i].angle);
    }
}

TEST_CASE("random circuits survive a text round-trip bit-exactly") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit circuit = testutil::random_circuit(rng, 5, 60);
        const Circuit parsed = circuit_from_text(circuit_to_text(circuit));
        REQUIRE(parsed.ops().size() == circuit.ops().size());
        for (std::size_t i = 0; i < parsed.ops().size(); ++i) {
            CHECK(parsed.ops()[i].angle == circuit.ops()[i].angle);
        }
    }
}

TEST_CASE("circuit validation") {
    Circuit circuit(2);
    CHECK_THROWS_AS(circuit.ry(2, 0.1), std::out_of_range);
    CHECK_THROWS_AS(circuit.cry(0, 0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(Circuit(0), std::out_of_range);
    CHECK_THROWS_AS(Circuit(13), std::out_of_range);
    CHECK_THROWS_AS(circuit_from_text("nonsense"), std::invalid_argument);
}

}  // TEST_SUITE
