// Ryser permanent and the permanent-based transition amplitude. Oracle
// path only; circuit evolution goes through sequential elementary
// operations instead.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "loqc/elements.hpp"
#include "loqc/fock.hpp"

namespace loqc {

// Ryser's formula with Gray-code row-sum updates, O(2^n n).
inline cplx ryser_permanent(const Matrix& m) {
    int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("ryser_permanent: not square");
    if (n == 0) return 1.0;
    if (n > 62) throw std::invalid_argument("ryser_permanent: matrix too large");

    std::vector<cplx> row_sums(n);  // sums over the currently included columns
    cplx total{};
    std::uint64_t prev_gray = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        std::uint64_t gray = k ^ (k >> 1);
        std::uint64_t diff = gray ^ prev_gray;
        int col = 0;
        while (!((diff >> col) & 1)) ++col;
        double sign_col = (gray & diff) ? 1.0 : -1.0;
        for (int r = 0; r < n; ++r) row_sums[r] += sign_col * m(r, col);
        prev_gray = gray;

        cplx prod = 1.0;
        for (int r = 0; r < n; ++r) prod *= row_sums[r];
        int bits = static_cast<int>(std::popcount(gray));
        double sign = ((n - bits) % 2 == 0) ? 1.0 : -1.0;
        total += sign * prod;
    }
    return total;
}

// Exact amplitude <out| U |in> for a mode unitary covering all modes of
// the occupation vectors: per(U[out-rows][in-cols]) / sqrt(prod n! prod m!).
inline cplx transition_amplitude(const ModeUnitary& u, const Occupation& in_occ,
                                 const Occupation& out_occ) {
    int m = static_cast<int>(in_occ.size());
    if (static_cast<int>(out_occ.size()) != m)
        throw std::invalid_argument("transition_amplitude: mode count mismatch");
    if (u.matrix.rows() != m || static_cast<int>(u.target_modes.size()) != m)
        throw std::invalid_argument("transition_amplitude: unitary must cover all modes");
    if (total_photons(in_occ) != total_photons(out_occ)) return 0.0;  // sector conservation

    // Position of each global mode inside the matrix.
    std::vector<int> slot(m, -1);
    for (int k = 0; k < m; ++k) slot[u.target_modes[k]] = k;

    std::vector<int> cols, rows;
    for (int k = 0; k < m; ++k)
        for (int rep = 0; rep < in_occ[k]; ++rep) cols.push_back(slot[k]);
    for (int k = 0; k < m; ++k)
        for (int rep = 0; rep < out_occ[k]; ++rep) rows.push_back(slot[k]);

    int n = static_cast<int>(cols.size());
    Matrix sub(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) sub(r, c) = u.matrix(rows[r], cols[c]);

    double denom = 1.0;
    for (int k = 0; k < m; ++k) {
        for (int i = 2; i <= in_occ[k]; ++i) denom *= i;
        for (int i = 2; i <= out_occ[k]; ++i) denom *= i;
    }
    return ryser_permanent(sub) / std::sqrt(denom);
}

}  // namespace loqc
