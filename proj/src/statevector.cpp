#include "cffqnn/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cffqnn {

namespace {

void check_qubit(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.num_qubits) +
                                " qubits");
    }
}

// Applies the real 2x2 rotation [[c, -s], [s, c]] to every amplitude pair
// that differs in the target bit. A control of -1 means unconditional;
// otherwise only pairs with the control bit set are touched.
void apply_real_pair_rotation(StateVector& state, int target, int control, double c,
                              double s) {
    const std::size_t step = std::size_t{1} << target;
    const std::size_t dim = state.amplitudes.size();
    const std::size_t cmask = control >= 0 ? std::size_t{1} << control : 0;
    auto* amps = state.amplitudes.data();
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            if (cmask != 0 && (i & cmask) == 0) continue;
            const auto a0 = amps[i];
            const auto a1 = amps[i + step];
            amps[i] = c * a0 - s * a1;
            amps[i + step] = s * a0 + c * a1;
        }
    }
}

}  // namespace

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Ry: return "RY";
        case GateKind::Cry: return "CRY";
        case GateKind::H: return "H";
        case GateKind::Phase: return "PHASE";
        case GateKind::Cnot: return "CNOT";
    }
    return "?";
}

StateVector new_zero_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::out_of_range("num_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(num_qubits));
    }
    StateVector state;
    state.num_qubits = num_qubits;
    state.amplitudes.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
    state.amplitudes[0] = {1.0, 0.0};
    return state;
}

void apply_gate(StateVector& state, const GateOp& op) {
    check_qubit(state, op.target);
    const bool needs_control = op.kind == GateKind::Cry || op.kind == GateKind::Cnot;
    if (needs_control) {
        if (!op.has_control()) {
            throw std::invalid_argument(std::string(gate_kind_name(op.kind)) +
                                        " requires a control qubit");
        }
        check_qubit(state, op.control);
        if (op.control == op.target) {
            throw std::invalid_argument("control and target must differ");
        }
    }

    auto* amps = state.amplitudes.data();
    const std::size_t dim = state.amplitudes.size();
    const std::size_t step = std::size_t{1} << op.target;

    switch (op.kind) {
        case GateKind::Ry:
            apply_real_pair_rotation(state, op.target, -1, std::cos(op.angle / 2),
                                     std::sin(op.angle / 2));
            break;
        case GateKind::Cry:
            apply_real_pair_rotation(state, op.target, op.control,
                                     std::cos(op.angle / 2), std::sin(op.angle / 2));
            break;
        case GateKind::H: {
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (std::size_t base = 0; base < dim; base += 2 * step) {
                for (std::size_t i = base; i < base + step; ++i) {
                    const auto a0 = amps[i];
                    const auto a1 = amps[i + step];
                    amps[i] = inv_sqrt2 * (a0 + a1);
                    amps[i + step] = inv_sqrt2 * (a0 - a1);
                }
            }
            break;
        }
        case GateKind::Phase: {
            const std::complex<double> ph{std::cos(op.angle), std::sin(op.angle)};
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & step) amps[i] *= ph;
            }
            break;
        }
        case GateKind::Cnot: {
            const std::size_t cmask = std::size_t{1} << op.control;
            for (std::size_t base = 0; base < dim; base += 2 * step) {
                for (std::size_t i = base; i < base + step; ++i) {
                    if ((i & cmask) == 0) continue;
                    std::swap(amps[i], amps[i + step]);
                }
            }
            break;
        }
    }
}

double expectation_z(const StateVector& state, int qubit) {
    check_qubit(state, qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double value = 0.0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        value += (i & mask) ? -p : p;
    }
    return value;
}

double expectation_z_product(const StateVector& state, std::span<const int> qubits) {
    if (qubits.empty()) {
        throw std::invalid_argument("qubit list must be non-empty");
    }
    std::size_t mask = 0;
    for (int q : qubits) {
        check_qubit(state, q);
        const std::size_t bit = std::size_t{1} << q;
        if (mask & bit) {
            throw std::invalid_argument("duplicate qubit " + std::to_string(q));
        }
        mask |= bit;
    }
    double value = 0.0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        value += (std::popcount(i & mask) & 1) ? -p : p;
    }
    return value;
}

double marginal_probability_one(const StateVector& state, int qubit) {
    check_qubit(state, qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        if (i & mask) p += std::norm(state.amplitudes[i]);
    }
    return p;
}

double norm_squared(const StateVector& state) {
    double n = 0.0;
    for (const auto& a : state.amplitudes) n += std::norm(a);
    return n;
}

}  // namespace cffqnn
