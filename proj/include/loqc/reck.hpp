// Triangular decomposition of a discrete unitary into beam splitters and
// phase shifters.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "loqc/elements.hpp"

namespace loqc {

namespace detail {

// Map an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    if (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    return a;
}

}  // namespace detail

// Factor a d x d unitary into at most d(d-1)/2 beam splitters with
// interleaved phase shifters, closed by one diagonal phase layer. Applying
// the returned elements in order reproduces U exactly (including global
// phase): recompose(reck_decompose(U), d) == U.
//
// Elimination runs over rows bottom-up; within a row, entries left of the
// diagonal are zeroed left to right by mixing adjacent columns.
inline std::vector<ElementaryElement> reck_decompose(const Matrix& u, double tol = 1e-10) {
    if (u.rows() != u.cols()) throw std::invalid_argument("reck_decompose: not square");
    double dev = u.unitarity_deviation();
    if (dev > tol)
        throw std::invalid_argument("reck_decompose: matrix not unitary, deviation " +
                                    format_double(dev));
    int d = u.rows();
    Matrix w = u;

    // Right-multiplying by P(c, phi) then B(c, c+1, theta) zeroes w(r, c).
    // Collect the steps, then emit their inverses in reverse order.
    struct Step {
        int col;
        double phi, theta;
    };
    std::vector<Step> steps;

    for (int r = d - 1; r >= 1; --r) {
        for (int c = 0; c < r; ++c) {
            cplx a = w(r, c), b = w(r, c + 1);
            if (std::abs(a) < 1e-15) continue;
            double phi = std::arg(b) - std::arg(a) + std::numbers::pi;
            double theta = std::atan2(std::abs(a), std::abs(b));
            cplx eiphi = std::polar(1.0, phi);
            double ct = std::cos(theta), st = std::sin(theta);
            for (int row = 0; row <= r; ++row) {
                cplx pc = eiphi * w(row, c);  // phase on column c
                cplx nc = ct * pc + st * w(row, c + 1);
                cplx nd = -st * pc + ct * w(row, c + 1);
                w(row, c) = nc;
                w(row, c + 1) = nd;
            }
            w(r, c) = 0.0;  // zeroed by construction
            steps.push_back({c, phi, theta});
        }
    }

    std::vector<ElementaryElement> out;
    out.reserve(2 * steps.size() + d);
    for (const auto& s : steps) {
        double phi = detail::wrap_angle(-s.phi);
        double theta = detail::wrap_angle(-s.theta);
        if (std::abs(phi) > 1e-14)
            out.push_back({ElementaryElement::phase_shifter, s.col, 0, phi});
        if (std::abs(theta) > 1e-14)
            out.push_back({ElementaryElement::beam_splitter, s.col, s.col + 1, theta});
    }
    // Residual diagonal of phases.
    for (int j = 0; j < d; ++j) {
        double phi = detail::wrap_angle(std::arg(w(j, j)));
        if (std::abs(phi) > 1e-14)
            out.push_back({ElementaryElement::phase_shifter, j, 0, phi});
    }
    return out;
}

}  // namespace loqc
