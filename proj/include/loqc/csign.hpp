// Conditional sign-flip gate: the basic two-NS construction (success 1/16)
// and the teleportation-boosted version (success (n/(n+1))^2).
#pragma once

#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "loqc/conditional.hpp"
#include "loqc/ns.hpp"

namespace loqc {

// Sign flip on |1>|1>, identity on the rest of the <=1-photon-per-mode
// domain. Deterministic logical reference, also the "ideal" backend.
inline SparseState csign_ideal_action(const SparseState& state, int mode_a, int mode_b) {
    SparseState out(state.mode_count());
    for (const auto& [occ, amp] : state.terms())
        out.add(occ, (occ[mode_a] * occ[mode_b]) % 2 ? -amp : amp);
    return out;
}

// Two balanced splitters around an NS gate on each arm (success amplitude
// 1/2 per NS, hence 1/16 total).
inline ConditionalResult csign_basic(const SparseState& state, int mode_a, int mode_b) {
    if (mode_a == mode_b) throw std::invalid_argument("csign_basic: mode collision");
    const double quarter = std::numbers::pi / 4;
    SparseState work = apply_two_mode(state, beam_splitter(quarter), mode_a, mode_b);
    ConditionalResult result;
    for (auto& first : apply_ns(work, mode_a).branches) {
        if (!first.success) {
            result.branches.push_back(std::move(first));
            continue;
        }
        for (auto& second : apply_ns(first.post_state, mode_b).branches) {
            Occupation outcome = first.outcome;
            outcome.insert(outcome.end(), second.outcome.begin(), second.outcome.end());
            double p = first.probability * second.probability;
            if (!second.success) {
                result.branches.push_back({std::move(outcome), p, std::move(second.post_state),
                                           false, ""});
                continue;
            }
            SparseState final_state =
                apply_two_mode(second.post_state, beam_splitter(-quarter), mode_a, mode_b);
            result.branches.push_back({std::move(outcome), p, std::move(final_state), true, ""});
        }
    }
    return result;
}

// The 2n-photon entangled ancilla on 4n modes: terms
// |1>^j |0>^(n-j) |0>^j |1>^(n-j) (x) (same in k), sign (-1)^((n-j)(n-k)),
// normalization 1/(n+1).
inline SparseState ancilla_phi(int n) {
    if (n < 1) throw std::invalid_argument("ancilla_phi: n must be >= 1");
    SparseState state(4 * n);
    double coeff = 1.0 / (n + 1);
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            Occupation occ(4 * n, 0);
            for (int i = 0; i < n; ++i) {
                occ[i] = i < j ? 1 : 0;          // |1>^j |0>^(n-j)
                occ[n + i] = i < j ? 0 : 1;      // |0>^j |1>^(n-j)
                occ[2 * n + i] = i < k ? 1 : 0;
                occ[3 * n + i] = i < k ? 0 : 1;
            }
            double sign = ((n - j) * (n - k)) % 2 ? -1.0 : 1.0;
            state.add(occ, sign * coeff);
        }
    return state;
}

namespace detail {

struct TeleportCorrection {
    double phase_a = 0, phase_b = 0, global = 0;
};

struct RawTeleportBranch {
    Occupation outcome;  // pattern on the 2(n+1) Fourier-measured modes
    double probability = 0;
    SparseState state;  // rails relocated back to (mode_a, mode_b) on success
    bool success = false;
};

// Attach the ancilla, Fourier-mix each input rail with its n partner
// modes, measure the mixed blocks, and on success route the detected
// output rails back into the input mode slots. Corrections not yet
// applied.
inline std::vector<RawTeleportBranch> teleport_core(const SparseState& state, int mode_a,
                                                    int mode_b, int n) {
    int m = state.mode_count();
    if (mode_a == mode_b || mode_a < 0 || mode_b < 0 || mode_a >= m || mode_b >= m)
        throw std::invalid_argument("csign_teleported: bad rail modes");

    SparseState work = tensor(state, ancilla_phi(n));
    // Ancilla layout after the input's m modes: [A1 | A2 | B1 | B2], n each.
    std::vector<int> block_a{mode_a}, block_b{mode_b};
    for (int i = 0; i < n; ++i) block_a.push_back(m + i);
    for (int i = 0; i < n; ++i) block_b.push_back(m + 2 * n + i);
    Matrix fourier = dft_matrix(n + 1);
    work = apply_interferometer(work, ModeUnitary(fourier, block_a));
    work = apply_interferometer(work, ModeUnitary(fourier, block_b));

    std::vector<int> measured = block_a;
    measured.insert(measured.end(), block_b.begin(), block_b.end());
    std::vector<bool> is_measured(work.mode_count(), false);
    for (int mm : measured) is_measured[mm] = true;
    auto new_index = [&](int old_index) {  // position among survivors
        int idx = 0;
        for (int i = 0; i < old_index; ++i)
            if (!is_measured[i]) ++idx;
        return idx;
    };

    std::vector<RawTeleportBranch> result;
    for (auto& branch : measure_modes(work, measured)) {
        int k_a = 0, k_b = 0;
        for (int i = 0; i <= n; ++i) k_a += branch.outcome[i];
        for (int i = 0; i <= n; ++i) k_b += branch.outcome[n + 1 + i];
        bool success = k_a >= 1 && k_a <= n && k_b >= 1 && k_b <= n;
        if (!success) {
            result.push_back({std::move(branch.outcome), branch.probability,
                              std::move(branch.post_state), false});
            continue;
        }

        // Output rails: the k-th mode of each second ancilla half.
        int out_a = m + n + (k_a - 1);
        int out_b = m + 3 * n + (k_b - 1);
        // The rest of the second halves is in a known product pattern;
        // measure it away (single deterministic branch).
        std::vector<int> leftover;
        for (int i = 0; i < n; ++i) {
            if (m + n + i != out_a) leftover.push_back(new_index(m + n + i));
            if (m + 3 * n + i != out_b) leftover.push_back(new_index(m + 3 * n + i));
        }
        SparseState routed = std::move(branch.post_state);
        if (!leftover.empty()) {
            auto sub = measure_modes(routed, leftover);
            if (sub.size() != 1)
                throw std::runtime_error("csign_teleported: leftover ancilla not deterministic");
            routed = std::move(sub[0].post_state);
        }
        // Survivor order is now: original modes except the two rails, then
        // out_a, then out_b. Route the rails back into place.
        std::vector<int> perm(m);
        int pos = 0;
        for (int i = 0; i < m; ++i)
            if (i != mode_a && i != mode_b) perm[pos++] = i;
        perm[pos++] = mode_a;
        perm[pos++] = mode_b;
        routed = permute_modes(routed, perm);
        result.push_back({std::move(branch.outcome), branch.probability, std::move(routed), true});
    }
    return result;
}

// Outcome-dependent phase corrections, calibrated once per boost order on
// a full-support product input and cached. A pure phase per rail plus a
// branch-global phase turns every success branch into the ideal C-SIGN
// output; the calibration verifies this structure and fails loudly if it
// ever breaks.
inline const std::map<Occupation, TeleportCorrection>& teleport_corrections(int n) {
    static std::mutex mutex;
    static std::map<int, std::map<Occupation, TeleportCorrection>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    SparseState plus(1);
    plus.add({0}, 1.0 / std::sqrt(2.0));
    plus.add({1}, 1.0 / std::sqrt(2.0));
    SparseState input = tensor(plus, plus);
    SparseState ideal = csign_ideal_action(input, 0, 1);

    std::map<Occupation, TeleportCorrection> table;
    for (const auto& raw : teleport_core(input, 0, 1, n)) {
        if (!raw.success) continue;
        cplx b00 = raw.state.amplitude({0, 0});
        cplx b01 = raw.state.amplitude({0, 1});
        cplx b10 = raw.state.amplitude({1, 0});
        cplx b11 = raw.state.amplitude({1, 1});
        for (cplx b : {b00, b01, b10, b11})
            if (std::abs(std::abs(b) - 0.5) > 1e-7)
                throw std::runtime_error("teleport calibration: non-uniform branch amplitudes");
        TeleportCorrection corr;
        corr.global = std::arg(b00 / ideal.amplitude({0, 0}));
        corr.phase_a = std::arg(b10 / ideal.amplitude({1, 0})) - corr.global;
        corr.phase_b = std::arg(b01 / ideal.amplitude({0, 1})) - corr.global;
        double check = std::arg(b11 / ideal.amplitude({1, 1}) *
                                std::polar(1.0, -(corr.global + corr.phase_a + corr.phase_b)));
        if (std::abs(check) > 1e-7)
            throw std::runtime_error("teleport calibration: correction is not phase-diagonal");
        table.emplace(raw.outcome, corr);
    }
    return cache.emplace(n, std::move(table)).first->second;
}

}  // namespace detail

// Teleportation-boosted C-SIGN. Both rails are teleported through the
// entangled ancilla; the built-in sign pattern applies the gate, the
// Fourier-block detector counts select the output rails, and cached
// phase corrections make every success branch equal the ideal action.
inline ConditionalResult csign_teleported(const SparseState& state, int mode_a, int mode_b,
                                          int n) {
    if (n < 1) throw std::invalid_argument("csign_teleported: n must be >= 1");
    const auto& corrections = detail::teleport_corrections(n);
    ConditionalResult result;
    for (auto& raw : detail::teleport_core(state, mode_a, mode_b, n)) {
        if (!raw.success) {
            result.branches.push_back({std::move(raw.outcome), raw.probability,
                                       std::move(raw.state), false, ""});
            continue;
        }
        auto corr_it = corrections.find(raw.outcome);
        if (corr_it == corrections.end())
            throw std::runtime_error("csign_teleported: outcome missing from correction table");
        const auto& corr = corr_it->second;
        SparseState corrected = apply_phase(raw.state, -corr.phase_a, mode_a);
        corrected = apply_phase(corrected, -corr.phase_b, mode_b);
        corrected.scale(std::polar(1.0, -corr.global));
        std::ostringstream desc;
        desc << "phase(" << format_double(-corr.phase_a) << "," << format_double(-corr.phase_b)
             << ") global " << format_double(-corr.global);
        result.branches.push_back({std::move(raw.outcome), raw.probability, std::move(corrected),
                                   true, desc.str()});
    }
    return result;
}

// Backend dispatch used by the higher-level gates.
inline ConditionalResult csign(const SparseState& state, int mode_a, int mode_b,
                               const Backend& backend) {
    switch (backend.kind) {
        case Backend::ideal: {
            ConditionalResult r;
            r.branches.push_back({{}, 1.0, csign_ideal_action(state, mode_a, mode_b), true, ""});
            return r;
        }
        case Backend::basic:
            return csign_basic(state, mode_a, mode_b);
        case Backend::teleported:
            return csign_teleported(state, mode_a, mode_b, backend.n);
    }
    throw std::logic_error("csign: bad backend");
}

}  // namespace loqc
