// Elementary optical elements: beam splitters, phase shifters, DFT.
#pragma once

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "loqc/matrix.hpp"
#include "loqc/state.hpp"

namespace loqc {

// Unitary acting on the creation operators of a subset of modes.
// Convention: input operator of target mode k maps to
// sum_j U(j,k) * (output operator of target mode j).
struct ModeUnitary {
    Matrix matrix;
    std::vector<int> target_modes;

    ModeUnitary() = default;
    ModeUnitary(Matrix m, std::vector<int> modes, double tol = 1e-10)
        : matrix(std::move(m)), target_modes(std::move(modes)) {
        if (matrix.rows() != matrix.cols() ||
            matrix.rows() != static_cast<int>(target_modes.size()))
            throw std::invalid_argument("ModeUnitary: shape/mode mismatch");
        std::vector<bool> seen;
        for (int t : target_modes) {
            if (t < 0) throw std::invalid_argument("ModeUnitary: negative mode index");
            if (t >= static_cast<int>(seen.size())) seen.resize(t + 1, false);
            if (seen[t]) throw std::invalid_argument("ModeUnitary: duplicate mode index");
            seen[t] = true;
        }
        double dev = matrix.unitarity_deviation();
        if (dev > tol)
            throw std::invalid_argument("ModeUnitary: matrix not unitary, deviation " +
                                        format_double(dev));
    }
};

struct ElementaryElement {
    enum Kind { beam_splitter, phase_shifter };
    Kind kind;
    int mode_a = 0;        // splitter: first mode; phase: the mode
    int mode_b = 0;        // splitter only
    double parameter = 0;  // theta (splitter) or phi (phase), radians
};

// [[cos t, -sin t], [sin t, cos t]]
inline Matrix beam_splitter(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return Matrix(2, 2, {c, -s, s, c});
}

// [exp(i phi)]
inline Matrix phase_shifter(double phi) {
    return Matrix(1, 1, {std::polar(1.0, phi)});
}

// Entries (1/sqrt(n)) exp(2 pi i j k / n).
inline Matrix dft_matrix(int n) {
    if (n < 1) throw std::invalid_argument("dft_matrix: n must be positive");
    Matrix f(n, n);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            f(j, k) = std::polar(scale, 2.0 * std::numbers::pi * j * k / n);
    return f;
}

inline Matrix element_matrix(const ElementaryElement& e) {
    return e.kind == ElementaryElement::beam_splitter ? beam_splitter(e.parameter)
                                                      : phase_shifter(e.parameter);
}

// Product of the embedded element matrices in application order (later
// elements multiply from the left).
inline Matrix recompose(const std::vector<ElementaryElement>& elements, int dim) {
    Matrix total = Matrix::identity(dim);
    for (const auto& e : elements) {
        Matrix m = element_matrix(e);
        Matrix embedded = Matrix::identity(dim);
        if (e.kind == ElementaryElement::beam_splitter) {
            embedded(e.mode_a, e.mode_a) = m(0, 0);
            embedded(e.mode_a, e.mode_b) = m(0, 1);
            embedded(e.mode_b, e.mode_a) = m(1, 0);
            embedded(e.mode_b, e.mode_b) = m(1, 1);
        } else {
            embedded(e.mode_a, e.mode_a) = m(0, 0);
        }
        total = embedded * total;
    }
    return total;
}

// --- netlist text format -------------------------------------------------
//
//   BS i j theta
//   PS i phi

inline void write_netlist(std::ostream& os, const std::vector<ElementaryElement>& elements) {
    for (const auto& e : elements) {
        if (e.kind == ElementaryElement::beam_splitter)
            os << "BS " << e.mode_a << " " << e.mode_b << " " << format_double(e.parameter) << "\n";
        else
            os << "PS " << e.mode_a << " " << format_double(e.parameter) << "\n";
    }
}

inline std::vector<ElementaryElement> read_netlist(std::istream& is) {
    std::vector<ElementaryElement> elements;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        ElementaryElement e;
        if (tag == "BS") {
            e.kind = ElementaryElement::beam_splitter;
            if (!(ls >> e.mode_a >> e.mode_b >> e.parameter))
                throw std::runtime_error("read_netlist: bad line: " + line);
        } else if (tag == "PS") {
            e.kind = ElementaryElement::phase_shifter;
            if (!(ls >> e.mode_a >> e.parameter))
                throw std::runtime_error("read_netlist: bad line: " + line);
        } else {
            throw std::runtime_error("read_netlist: unknown element: " + line);
        }
        elements.push_back(e);
    }
    return elements;
}

}  // namespace loqc
