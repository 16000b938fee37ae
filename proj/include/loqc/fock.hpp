// Multimode bosonic Fock basis: occupation vectors and sector enumeration.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace loqc {

// Photon counts per mode. All entries non-negative; the photon total is
// preserved by every passive operation in this library.
using Occupation = std::vector<int>;

inline int total_photons(const Occupation& occ) {
    return std::accumulate(occ.begin(), occ.end(), 0);
}

// Sector dimension C(N+M-1, N) for M modes and N photons.
inline std::uint64_t fock_dim(int modes, int photons) {
    if (modes < 1) throw std::invalid_argument("fock_dim: need at least one mode");
    if (photons < 0) throw std::invalid_argument("fock_dim: negative photon number");
    // C(N+M-1, N) by running product, overflow-checked.
    std::uint64_t result = 1;
    for (int i = 1; i <= photons; ++i) {
        std::uint64_t numer = static_cast<std::uint64_t>(modes - 1 + i);
        if (result > UINT64_MAX / numer)
            throw std::overflow_error("fock_dim: sector size exceeds 64 bits");
        result = result * numer / i;  // divisible at every step
    }
    return result;
}

// All occupation vectors of the (modes, photons) sector, lexicographically
// descending. This is the canonical basis order used everywhere.
inline std::vector<Occupation> enumerate_sector(int modes, int photons) {
    std::uint64_t dim = fock_dim(modes, photons);
    std::vector<Occupation> basis;
    basis.reserve(dim);
    Occupation occ(modes, 0);
    occ[0] = photons;
    while (true) {
        basis.push_back(occ);
        // Next vector in descending lexicographic order: find the last
        // position before the final mode with a photon to move right.
        int k = modes - 2;
        while (k >= 0 && occ[k] == 0) --k;
        if (k < 0) break;
        --occ[k];
        int tail = occ[modes - 1];
        occ[modes - 1] = 0;
        occ[k + 1] = tail + 1;
    }
    return basis;
}

}  // namespace loqc
