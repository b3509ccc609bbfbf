#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cffqnn {

// Exact statevector simulation of the five gates the models need.
//
// Convention: qubit k corresponds to bit k of the basis-state index
// (little-endian), so |q2 q1 q0> = |110> sits at index 6. Gates are applied
// in place with stride-based pair updates; no gate matrix is materialized.

inline constexpr int kMaxQubits = 12;

struct StateVector {
    int num_qubits = 0;
    std::vector<std::complex<double>> amplitudes;
};

enum class GateKind { Ry, Cry, H, Phase, Cnot };

struct GateOp {
    GateKind kind = GateKind::Ry;
    int target = 0;
    int control = -1;  // -1 = no control
    double angle = 0.0;

    bool has_control() const { return control >= 0; }

    static GateOp ry(int target, double angle) { return {GateKind::Ry, target, -1, angle}; }
    static GateOp cry(int control, int target, double angle) {
        return {GateKind::Cry, target, control, angle};
    }
    static GateOp h(int target) { return {GateKind::H, target, -1, 0.0}; }
    static GateOp phase(int target, double angle) {
        return {GateKind::Phase, target, -1, angle};
    }
    static GateOp cnot(int control, int target) {
        return {GateKind::Cnot, target, control, 0.0};
    }
};

const char* gate_kind_name(GateKind kind);

/// |0...0> on the given number of qubits. Throws std::out_of_range unless
/// 1 <= num_qubits <= kMaxQubits.
StateVector new_zero_state(int num_qubits);

/// Applies one gate in place. Throws std::out_of_range for bad indices and
/// std::invalid_argument when control == target.
void apply_gate(StateVector& state, const GateOp& op);

/// <Z> of a single qubit: sum of |amp|^2 * (+1 for bit 0, -1 for bit 1).
double expectation_z(const StateVector& state, int qubit);

/// <Z x Z x ...> over a set of distinct qubits (parity-weighted sum).
double expectation_z_product(const StateVector& state, std::span<const int> qubits);

/// Probability that measuring the qubit yields 1.
double marginal_probability_one(const StateVector& state, int qubit);

double norm_squared(const StateVector& state);

}  // namespace cffqnn
