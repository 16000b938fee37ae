// Exact action of mode unitaries on sparse Fock states, and photon-number
// measurement with branching.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "loqc/elements.hpp"
#include "loqc/reck.hpp"
#include "loqc/state.hpp"

namespace loqc {

namespace detail {

inline double sqrt_factorial(int n) {
    static thread_local std::vector<double> cache{1.0};
    while (static_cast<int>(cache.size()) <= n)
        cache.push_back(cache.back() * std::sqrt(static_cast<double>(cache.size())));
    return cache[n];
}

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace detail

// Exact image of the state under a 2x2 unitary mixing modes i and j:
// a_i -> u00 a_i + u10 a_j, a_j -> u01 a_i + u11 a_j (creation operators).
inline SparseState apply_two_mode(const SparseState& state, const Matrix& u2, int i, int j) {
    if (u2.rows() != 2 || u2.cols() != 2)
        throw std::invalid_argument("apply_two_mode: matrix must be 2x2");
    if (i == j || i < 0 || j < 0 || i >= state.mode_count() || j >= state.mode_count())
        throw std::invalid_argument("apply_two_mode: bad mode indices");

    const cplx u00 = u2(0, 0), u01 = u2(0, 1), u10 = u2(1, 0), u11 = u2(1, 1);
    SparseState out(state.mode_count());
    for (const auto& [occ, amp] : state.terms()) {
        int n = occ[i], m = occ[j];
        if (n + m == 0) {
            out.add(occ, amp);
            continue;
        }
        // Expand (u00 a + u10 b)^n (u01 a + u11 b)^m term by term.
        std::vector<cplx> pow00{1.0}, pow10{1.0}, pow01{1.0}, pow11{1.0};
        for (int p = 1; p <= n; ++p) {
            pow00.push_back(pow00.back() * u00);
            pow10.push_back(pow10.back() * u10);
        }
        for (int q = 1; q <= m; ++q) {
            pow01.push_back(pow01.back() * u01);
            pow11.push_back(pow11.back() * u11);
        }
        double in_norm = detail::sqrt_factorial(n) * detail::sqrt_factorial(m);
        Occupation occ_new = occ;
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= m; ++q) {
                int ni = p + q, nj = (n - p) + (m - q);
                cplx coeff = detail::binomial(n, p) * detail::binomial(m, q) * pow00[p] *
                             pow10[n - p] * pow01[q] * pow11[m - q];
                coeff *= detail::sqrt_factorial(ni) * detail::sqrt_factorial(nj) / in_norm;
                if (coeff == cplx{}) continue;
                occ_new[i] = ni;
                occ_new[j] = nj;
                out.add(occ_new, amp * coeff);
            }
    }
    out.prune();
    return out;
}

inline SparseState apply_phase(const SparseState& state, double phi, int mode) {
    if (mode < 0 || mode >= state.mode_count())
        throw std::invalid_argument("apply_phase: bad mode index");
    SparseState out(state.mode_count());
    for (const auto& [occ, amp] : state.terms())
        out.add(occ, amp * std::polar(1.0, phi * occ[mode]));
    return out;
}

// Apply a netlist in order; element indices refer to state modes directly.
inline SparseState apply_elements(SparseState state, const std::vector<ElementaryElement>& elements) {
    for (const auto& e : elements) {
        if (e.kind == ElementaryElement::beam_splitter)
            state = apply_two_mode(state, element_matrix(e), e.mode_a, e.mode_b);
        else
            state = apply_phase(state, e.parameter, e.mode_a);
    }
    return state;
}

// Induced Fock-space action of an arbitrary mode unitary, routed through
// the triangular decomposition so the state stays sparse.
inline SparseState apply_interferometer(const SparseState& state, const ModeUnitary& u) {
    for (int t : u.target_modes)
        if (t >= state.mode_count())
            throw std::invalid_argument("apply_interferometer: target mode out of range");
    std::vector<ElementaryElement> elements = reck_decompose(u.matrix);
    for (auto& e : elements) {  // local element indices -> global modes
        e.mode_a = u.target_modes[e.mode_a];
        if (e.kind == ElementaryElement::beam_splitter) e.mode_b = u.target_modes[e.mode_b];
    }
    return apply_elements(state, elements);
}

struct MeasurementBranch {
    Occupation outcome;     // photon counts on the measured modes, in given order
    double probability;
    SparseState post_state;  // surviving modes, ascending original order, renormalized
};

// Photon-number measurement of a subset of modes. One branch per outcome
// with nonzero probability, ordered descending-lexicographically by outcome.
inline std::vector<MeasurementBranch> measure_modes(const SparseState& state,
                                                    const std::vector<int>& measured_modes) {
    std::vector<bool> is_measured(state.mode_count(), false);
    for (int m : measured_modes) {
        if (m < 0 || m >= state.mode_count())
            throw std::invalid_argument("measure_modes: bad mode index");
        if (is_measured[m]) throw std::invalid_argument("measure_modes: duplicate mode");
        is_measured[m] = true;
    }
    int survivors = state.mode_count() - static_cast<int>(measured_modes.size());

    std::map<Occupation, SparseState, std::greater<Occupation>> groups;
    for (const auto& [occ, amp] : state.terms()) {
        Occupation outcome(measured_modes.size());
        for (size_t k = 0; k < measured_modes.size(); ++k) outcome[k] = occ[measured_modes[k]];
        Occupation rest;
        rest.reserve(survivors);
        for (int k = 0; k < state.mode_count(); ++k)
            if (!is_measured[k]) rest.push_back(occ[k]);
        auto [it, fresh] = groups.try_emplace(std::move(outcome), survivors);
        it->second.add(rest, amp);
    }

    std::vector<MeasurementBranch> branches;
    branches.reserve(groups.size());
    for (auto& [outcome, projected] : groups) {
        double p = projected.norm_sq();
        if (p < 1e-24) continue;
        projected.scale(1.0 / std::sqrt(p));
        branches.push_back({outcome, p, std::move(projected)});
    }
    return branches;
}

}  // namespace loqc
