// Heralded-gate results: measurement branches with success flags.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "loqc/state.hpp"

namespace loqc {

struct ConditionalBranch {
    Occupation outcome;      // detector pattern on the measured modes
    double probability = 0;  // absolute probability of this branch
    SparseState post_state;  // normalized state on the surviving modes
    bool success = false;
    std::string correction;  // phase/permutation applied on success, if any
};

struct ConditionalResult {
    std::vector<ConditionalBranch> branches;

    double success_probability() const {
        double p = 0;
        for (const auto& b : branches)
            if (b.success) p += b.probability;
        return p;
    }

    double total_probability() const {
        double p = 0;
        for (const auto& b : branches) p += b.probability;
        return p;
    }

    // The (unique up to tolerance) post state of the success branches.
    const SparseState& success_state() const {
        for (const auto& b : branches)
            if (b.success) return b.post_state;
        throw std::runtime_error("ConditionalResult: no success branch");
    }

    // Merge all success branches into one. Success branches of a corrected
    // heralded gate carry identical states; this keeps downstream branch
    // trees linear in the gate count.
    void coalesce_successes(double tol = 1e-9) {
        int rep = -1;
        double p = 0;
        std::vector<ConditionalBranch> kept;
        for (auto& b : branches) {
            if (!b.success) {
                kept.push_back(std::move(b));
                continue;
            }
            p += b.probability;
            if (rep < 0) {
                rep = static_cast<int>(kept.size());
                kept.push_back(std::move(b));
            } else if (kept[rep].post_state.max_amplitude_diff(b.post_state) > tol) {
                throw std::runtime_error(
                    "coalesce_successes: success branches disagree beyond tolerance");
            }
        }
        if (rep >= 0) {
            kept[rep].probability = p;
            kept[rep].correction = "coalesced";
        }
        branches = std::move(kept);
    }
};

// Which physical realization backs the conditional gates.
struct Backend {
    enum Kind { ideal, basic, teleported };
    Kind kind = basic;
    int n = 1;  // boost order, teleported only

    static Backend make_ideal() { return {ideal, 1}; }
    static Backend make_basic() { return {basic, 1}; }
    static Backend make_teleported(int n) {
        if (n < 1) throw std::invalid_argument("Backend: boost order must be >= 1");
        return {teleported, n};
    }

    // Success probability of one C-SIGN (and hence one C-SWAP).
    double csign_success_probability() const {
        switch (kind) {
            case ideal: return 1.0;
            case basic: return 1.0 / 16.0;
            case teleported: {
                double r = static_cast<double>(n) / (n + 1);
                return r * r;
            }
        }
        return 0.0;
    }

    std::string name() const {
        switch (kind) {
            case ideal: return "ideal";
            case basic: return "basic";
            case teleported: return "teleported(" + std::to_string(n) + ")";
        }
        return "?";
    }
};

}  // namespace loqc
