// The two-qudit C-SHIFT |x>|y> -> |x>|(y-x) mod d>, built from C-SWAPs.
#pragma once

#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "loqc/cswap.hpp"
#include "loqc/qudit.hpp"

namespace loqc {

struct SwapStep {
    int control_value;  // 1..d-1; fires when the control qudit equals it
    int target_p, target_q;  // target-register positions, p < q
};

using SwapNetwork = std::vector<SwapStep>;

// Position permutation applied by the network to the target register when
// the control value is v (swaps with other control values do not fire).
inline std::vector<int> network_permutation(const SwapNetwork& network, int d, int v) {
    std::vector<int> origin_at(d);  // origin_at[pos] = initial position of the content there
    std::iota(origin_at.begin(), origin_at.end(), 0);
    for (const auto& step : network)
        if (step.control_value == v) std::swap(origin_at[step.target_p], origin_at[step.target_q]);
    std::vector<int> dest(d);  // dest[y] = final position of the content starting at y
    for (int pos = 0; pos < d; ++pos) dest[origin_at[pos]] = pos;
    return dest;
}

// Target permutation the C-SHIFT needs for control value v: the photon at
// position y moves to (y - v) mod d.
inline std::vector<int> rotation_permutation(int d, int v) {
    std::vector<int> perm(d);
    for (int y = 0; y < d; ++y) perm[y] = ((y - v) % d + d) % d;
    return perm;
}

inline bool network_matches_cshift(const SwapNetwork& network, int d) {
    for (int v = 0; v < d; ++v)
        if (network_permutation(network, d, v) != rotation_permutation(d, v)) return false;
    return true;
}

// Generic constructive network: for each control value, decompose the
// rotation into cycles and each cycle into transpositions. d - gcd(v, d)
// swaps per value, at most (d-1)^2 in total.
inline SwapNetwork cshift_network(int d) {
    if (d < 2) throw std::invalid_argument("cshift_network: d must be >= 2");
    SwapNetwork network;
    for (int v = 1; v < d; ++v) {
        auto perm = rotation_permutation(d, v);
        std::vector<bool> done(d, false);
        for (int start = 0; start < d; ++start) {
            if (done[start] || perm[start] == start) continue;
            std::vector<int> cycle;
            for (int cur = start; !done[cur]; cur = perm[cur]) {
                done[cur] = true;
                cycle.push_back(cur);
            }
            // (c0 c1 ... cL-1) as swaps (cL-2, cL-1), ..., (c1, c2), (c0, c1).
            for (int i = static_cast<int>(cycle.size()) - 2; i >= 0; --i) {
                int p = cycle[i], q = cycle[i + 1];
                network.push_back({v, std::min(p, q), std::max(p, q)});
            }
        }
    }
    return network;
}

// Exhaustive search for the shortest C-SWAP list realizing the C-SHIFT
// truth table, lexicographic candidate order, first minimal match wins.
// Returns an empty optional when no network of length <= max_swaps exists.
inline std::optional<SwapNetwork> search_minimal_network(int d, int max_swaps) {
    if (d < 2 || d > 4 || max_swaps < 1 || max_swaps > 6)
        throw std::invalid_argument("search_minimal_network: supported range is d<=4, swaps<=6");
    std::vector<SwapStep> alphabet;
    for (int v = 1; v < d; ++v)
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) alphabet.push_back({v, p, q});
    int n_letters = static_cast<int>(alphabet.size());

    for (int length = 1; length <= max_swaps; ++length) {
        SwapNetwork candidate(length);
        std::vector<int> odometer(length, 0);
        while (true) {
            for (int i = 0; i < length; ++i) candidate[i] = alphabet[odometer[i]];
            if (network_matches_cshift(candidate, d)) return candidate;
            int pos = length - 1;
            while (pos >= 0 && ++odometer[pos] == n_letters) odometer[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return std::nullopt;
}

// Run the network optically: one C-SWAP per step, failure branches
// terminate, successes stay coalesced. Success probability is
// (backend probability)^(swap count).
inline ConditionalResult apply_cshift(const SparseState& state, const QuditRegister& control,
                                      const QuditRegister& target, const Backend& backend,
                                      const SwapNetwork& network) {
    if (control.d != target.d) throw std::invalid_argument("apply_cshift: dimension mismatch");
    for (int cm : control.mode_offsets)
        for (int tm : target.mode_offsets)
            if (cm == tm) throw std::invalid_argument("apply_cshift: register overlap");

    ConditionalResult result;
    SparseState current = state;
    double p_so_far = 1.0;
    for (const auto& step : network) {
        auto gate = cswap(current, control.mode(step.control_value), target.mode(step.target_p),
                          target.mode(step.target_q), backend);
        double p_gate = gate.success_probability();
        for (auto& branch : gate.branches) {
            if (branch.success) continue;
            branch.probability *= p_so_far;  // conditional -> absolute
            result.branches.push_back(std::move(branch));
        }
        p_so_far *= p_gate;
        current = gate.success_state();
    }
    result.branches.push_back({{}, p_so_far, std::move(current), true, "coalesced"});
    return result;
}

inline ConditionalResult apply_cshift(const SparseState& state, const QuditRegister& control,
                                      const QuditRegister& target, const Backend& backend) {
    return apply_cshift(state, control, target, backend, cshift_network(control.d));
}

// --- serialization: `CSWAP control_value target_p target_q` per line ----

inline void write_network(std::ostream& os, const SwapNetwork& network) {
    for (const auto& s : network)
        os << "CSWAP " << s.control_value << " " << s.target_p << " " << s.target_q << "\n";
}

inline SwapNetwork read_network(std::istream& is) {
    SwapNetwork network;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        SwapStep s;
        if (!(ls >> tag >> s.control_value >> s.target_p >> s.target_q) || tag != "CSWAP")
            throw std::runtime_error("read_network: bad line: " + line);
        network.push_back(s);
    }
    return network;
}

}  // namespace loqc
