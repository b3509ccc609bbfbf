#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cffqnn/statevector.hpp"

namespace cffqnn {

/// Ordered gate list over a fixed qubit register. Ops are validated when
/// added; list order is execution order. Immutable apart from add().
class Circuit {
public:
    explicit Circuit(int num_qubits);

    void add(const GateOp& op);

    void ry(int target, double angle) { add(GateOp::ry(target, angle)); }
    void cry(int control, int target, double angle) { add(GateOp::cry(control, target, angle)); }
    void h(int target) { add(GateOp::h(target)); }
    void phase(int target, double angle) { add(GateOp::phase(target, angle)); }
    void cnot(int control, int target) { add(GateOp::cnot(control, target)); }

    int num_qubits() const { return num_qubits_; }
    const std::vector<GateOp>& ops() const { return ops_; }

private:
    int num_qubits_;
    std::vector<GateOp> ops_;
};

/// Gate and depth tallies behind the resource comparisons. All counts are
/// syntactic: angles never matter.
struct ResourceReport {
    int depth = 0;
    int native_controlled_ops = 0;  // CRY + CNOT as they appear in the circuit
    int cnot_equivalent = 0;        // CNOT = 1, CRY = 2 (two-CNOT decomposition)
    int entangling_pairs = 0;       // distinct unordered qubit pairs touched
    int single_qubit_gates = 0;
    int trainable_parameters = 0;
    double wall_time_seconds = 0.0;  // filled in by the trainer
};

/// Runs the circuit on |0...0>.
StateVector run(const Circuit& circuit);

/// Layer count under greedy left-to-right scheduling: two ops share a layer
/// iff their qubit sets (target plus control) are disjoint.
int depth(const Circuit& circuit);

ResourceReport count_resources(const Circuit& circuit, int trainable_parameters);

/// Line-oriented text form: one op per line, `KIND target [control] [angle]`,
/// angles with 17 significant digits. A `qubits N` header line comes first.
std::string circuit_to_text(const Circuit& circuit);
Circuit circuit_from_text(std::istream& in);
Circuit circuit_from_text(const std::string& text);

}  // namespace cffqnn
