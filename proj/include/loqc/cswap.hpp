// Photon-controlled mode exchange: balanced splitters around one C-SIGN.
#pragma once

#include <numbers>

#include "loqc/csign.hpp"

namespace loqc {

// Swaps target modes p and q when the control mode holds a photon, with
// phase +1 on every control/target basis configuration. Success
// probability is the backend C-SIGN probability. Success branches are
// coalesced into one.
inline ConditionalResult cswap(const SparseState& state, int control_mode, int target_p,
                               int target_q, const Backend& backend) {
    if (control_mode == target_p || control_mode == target_q || target_p == target_q)
        throw std::invalid_argument("cswap: mode collision");
    const double quarter = std::numbers::pi / 4;
    SparseState work = apply_two_mode(state, beam_splitter(quarter), target_p, target_q);
    ConditionalResult result;
    for (auto& branch : csign(work, control_mode, target_p, backend).branches) {
        if (!branch.success) {
            result.branches.push_back(std::move(branch));
            continue;
        }
        branch.post_state =
            apply_two_mode(branch.post_state, beam_splitter(-quarter), target_p, target_q);
        result.branches.push_back(std::move(branch));
    }
    result.coalesce_successes();
    return result;
}

}  // namespace loqc
