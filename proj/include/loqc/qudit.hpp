// Single-photon-over-d-modes qudit encoding: logical states, Bell states,
// generalized Hadamard.
#pragma once

#include <numbers>

#include "loqc/apply.hpp"
#include "loqc/state.hpp"

namespace loqc {

// Logical value j of a d-level system <-> one photon in the j-th of d
// reserved modes.
struct QuditRegister {
    int d = 2;
    std::vector<int> mode_offsets;  // global mode index of each logical value

    QuditRegister() = default;
    QuditRegister(int dim, int first_mode) : d(dim) {
        for (int j = 0; j < d; ++j) mode_offsets.push_back(first_mode + j);
    }
    QuditRegister(int dim, std::vector<int> offsets) : d(dim), mode_offsets(std::move(offsets)) {
        if (static_cast<int>(mode_offsets.size()) != d)
            throw std::invalid_argument("QuditRegister: offset count mismatch");
    }

    int mode(int j) const {
        if (j < 0 || j >= d) throw std::out_of_range("QuditRegister: logical value out of range");
        return mode_offsets[j];
    }

    // Logical value encoded in an occupation, or -1 if invalid.
    int decode(const Occupation& occ) const {
        int value = -1;
        for (int j = 0; j < d; ++j) {
            int c = occ[mode_offsets[j]];
            if (c == 0) continue;
            if (c > 1 || value >= 0) return -1;
            value = j;
        }
        return value;
    }
};

// |j> of a d-dimensional qudit on its own d modes.
inline SparseState logical_state(int d, int j) {
    if (d < 2) throw std::invalid_argument("logical_state: d must be >= 2");
    if (j < 0 || j >= d) throw std::out_of_range("logical_state: j out of range");
    Occupation occ(d, 0);
    occ[j] = 1;
    return SparseState::basis(occ);
}

// (1/sqrt(d)) sum_j e^{2 pi i j n / d} |j>_1 |(j+m) mod d>_2 on 2d modes.
inline SparseState bell_state(int d, int m, int n) {
    if (d < 2) throw std::invalid_argument("bell_state: d must be >= 2");
    if (m < 0 || m >= d || n < 0 || n >= d) throw std::out_of_range("bell_state: label out of range");
    SparseState state(2 * d);
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        Occupation occ(2 * d, 0);
        occ[j] = 1;
        occ[d + (j + m) % d] = 1;
        state.add(occ, std::polar(scale, 2.0 * std::numbers::pi * j * n / d));
    }
    return state;
}

// (1/sqrt(d)) sum_j e^{2 pi i j k1 / d} |j>_1 (x)_i |(j+k_i) mod d>_i over
// N qudits (N*d modes). For N=2 this reduces to bell_state(d, m=k2, n=k1).
inline SparseState generalized_bell(int d, const std::vector<int>& labels) {
    int parties = static_cast<int>(labels.size());
    if (d < 2 || parties < 2) throw std::invalid_argument("generalized_bell: need d>=2, N>=2");
    for (int k : labels)
        if (k < 0 || k >= d) throw std::out_of_range("generalized_bell: label out of range");
    SparseState state(parties * d);
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        Occupation occ(parties * d, 0);
        occ[j] = 1;
        for (int i = 1; i < parties; ++i) occ[i * d + (j + labels[i]) % d] = 1;
        state.add(occ, std::polar(scale, 2.0 * std::numbers::pi * j * labels[0] / d));
    }
    return state;
}

// Entries (1/sqrt(d)) e^{-2 pi i k x / d}: |x> -> sum_k H(k,x) |k>.
inline Matrix hadamard_d(int d) {
    if (d < 2) throw std::invalid_argument("hadamard_d: d must be >= 2");
    Matrix h(d, d);
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k)
        for (int x = 0; x < d; ++x)
            h(k, x) = std::polar(scale, -2.0 * std::numbers::pi * k * x / d);
    return h;
}

// Deterministic Hadamard on one register, routed through the triangular
// decomposition.
inline SparseState apply_hadamard(const SparseState& state, const QuditRegister& reg) {
    return apply_interferometer(state, ModeUnitary(hadamard_d(reg.d), reg.mode_offsets));
}

}  // namespace loqc
