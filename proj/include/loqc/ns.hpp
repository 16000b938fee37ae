// The nonlinear sign gate: |2> picks up a minus sign, heralded by two
// ancilla detectors, success probability 1/4.
#pragma once

#include <cmath>

#include "loqc/apply.hpp"
#include "loqc/conditional.hpp"

namespace loqc {

// 3x3 unitary over (signal, ancilla-with-photon, empty ancilla). With the
// ancillas prepared in |1,0> and post-selection on detecting (1,0), the
// signal undergoes a0|0> + a1|1> + a2|2> -> a0|0> + a1|1> - a2|2> with a
// uniform heralded amplitude of 1/2. Closed form: the real symmetric
// solution of the three post-selection constraints, corner entry 1-sqrt(2).
inline Matrix ns_unitary() {
    const double s2 = std::sqrt(2.0);
    const double a = 1.0 - s2;
    const double b = std::pow(2.0, -0.25);
    const double c = std::sqrt(3.0 / s2 - 2.0);
    const double d = 0.5;
    const double e = 0.5 - 1.0 / s2;
    const double f = s2 - 0.5;
    return Matrix(3, 3, {a, b, c, b, d, e, c, e, f});
}

// Attach the two ancilla modes in |1,0>, run the NS interferometer, and
// measure the ancillas. Success is the (1,0) detector pattern; the success
// branch carries NS(input) exactly (on the 0..2 photon subspace).
inline ConditionalResult apply_ns(const SparseState& state, int signal_mode) {
    if (signal_mode < 0 || signal_mode >= state.mode_count())
        throw std::invalid_argument("apply_ns: signal mode out of range");
    int m = state.mode_count();
    SparseState work = tensor(state, SparseState::basis({1, 0}));
    work = apply_interferometer(work, ModeUnitary(ns_unitary(), {signal_mode, m, m + 1}));
    ConditionalResult result;
    for (auto& branch : measure_modes(work, {m, m + 1})) {
        bool success = branch.outcome == Occupation{1, 0};
        result.branches.push_back({std::move(branch.outcome), branch.probability,
                                   std::move(branch.post_state), success, ""});
    }
    return result;
}

}  // namespace loqc
