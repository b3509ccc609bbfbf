#include "cffqnn/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "cffqnn/textio.hpp"

namespace cffqnn {

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::out_of_range("circuit qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(num_qubits));
    }
}

void Circuit::add(const GateOp& op) {
    if (op.target < 0 || op.target >= num_qubits_) {
        throw std::out_of_range("gate target " + std::to_string(op.target) +
                                " out of range");
    }
    const bool needs_control = op.kind == GateKind::Cry || op.kind == GateKind::Cnot;
    if (needs_control) {
        if (!op.has_control()) {
            throw std::invalid_argument(std::string(gate_kind_name(op.kind)) +
                                        " requires a control qubit");
        }
        if (op.control >= num_qubits_) {
            throw std::out_of_range("gate control " + std::to_string(op.control) +
                                    " out of range");
        }
        if (op.control == op.target) {
            throw std::invalid_argument("control and target must differ");
        }
    }
    ops_.push_back(op);
}

StateVector run(const Circuit& circuit) {
    StateVector state = new_zero_state(circuit.num_qubits());
    for (const GateOp& op : circuit.ops()) {
        apply_gate(state, op);
    }
    return state;
}

int depth(const Circuit& circuit) {
    // Greedy ASAP layering: an op lands one past the deepest layer already
    // occupied on any qubit it touches.
    std::vector<int> qubit_layer(static_cast<std::size_t>(circuit.num_qubits()), 0);
    int max_layer = 0;
    for (const GateOp& op : circuit.ops()) {
        int layer = qubit_layer[op.target];
        if (op.has_control()) layer = std::max(layer, qubit_layer[op.control]);
        ++layer;
        qubit_layer[op.target] = layer;
        if (op.has_control()) qubit_layer[op.control] = layer;
        max_layer = std::max(max_layer, layer);
    }
    return max_layer;
}

ResourceReport count_resources(const Circuit& circuit, int trainable_parameters) {
    if (trainable_parameters < 0) {
        throw std::invalid_argument("trainable_parameters must be >= 0");
    }
    ResourceReport report;
    report.depth = depth(circuit);
    report.trainable_parameters = trainable_parameters;
    std::set<std::pair<int, int>> pairs;
    for (const GateOp& op : circuit.ops()) {
        switch (op.kind) {
            case GateKind::Cnot:
                report.native_controlled_ops += 1;
                report.cnot_equivalent += 1;
                break;
            case GateKind::Cry:
                report.native_controlled_ops += 1;
                report.cnot_equivalent += 2;
                break;
            default:
                report.single_qubit_gates += 1;
                break;
        }
        if (op.has_control()) {
            pairs.insert({std::min(op.control, op.target), std::max(op.control, op.target)});
        }
    }
    report.entangling_pairs = static_cast<int>(pairs.size());
    return report;
}

std::string circuit_to_text(const Circuit& circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.num_qubits() << "\n";
    for (const GateOp& op : circuit.ops()) {
        out << gate_kind_name(op.kind) << ' ' << op.target;
        if (op.has_control()) out << ' ' << op.control;
        if (op.kind == GateKind::Ry || op.kind == GateKind::Cry ||
            op.kind == GateKind::Phase) {
            out << ' ' << format_double(op.angle);
        }
        out << '\n';
    }
    return out.str();
}

Circuit circuit_from_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty circuit text");
    }
    std::istringstream header(line);
    std::string tag;
    int num_qubits = 0;
    if (!(header >> tag >> num_qubits) || tag != "qubits") {
        throw std::invalid_argument("circuit text must start with 'qubits N'");
    }
    Circuit circuit(num_qubits);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string kind;
        fields >> kind;
        auto read_int = [&]() {
            int v;
            if (!(fields >> v)) throw std::invalid_argument("bad op line: " + line);
            return v;
        };
        auto read_angle = [&]() {
            std::string token;
            if (!(fields >> token)) throw std::invalid_argument("bad op line: " + line);
            return parse_double(token);
        };
        if (kind == "RY") {
            const int t = read_int();
            circuit.ry(t, read_angle());
        } else if (kind == "CRY") {
            const int t = read_int();
            const int c = read_int();
            circuit.cry(c, t, read_angle());
        } else if (kind == "H") {
            circuit.h(read_int());
        } else if (kind == "PHASE") {
            const int t = read_int();
            circuit.phase(t, read_angle());
        } else if (kind == "CNOT") {
            const int t = read_int();
            circuit.cnot(read_int(), t);
        } else {
            throw std::invalid_argument("unknown gate kind: " + kind);
        }
    }
    return circuit;
}

Circuit circuit_from_text(const std::string& text) {
    std::istringstream in(text);
    return circuit_from_text(in);
}

}  // namespace cffqnn
