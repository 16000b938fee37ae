#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "loqc/matrix.hpp"
#include "loqc/state.hpp"

namespace loqc::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Random normalized state on the (modes, photons) sector with full support.
template <class Rng>
SparseState random_state(int modes, int photons, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    SparseState s(modes);
    for (const auto& occ : enumerate_sector(modes, photons))
        s.add(occ, cplx(gauss(rng), gauss(rng)));
    s.normalize();
    return s;
}

}  // namespace loqc::testing
