// Sparse state vectors over a fixed-photon-number Fock sector.
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "loqc/fock.hpp"
#include "loqc/matrix.hpp"

namespace loqc {

// Amplitudes below this threshold are dropped after each elementary
// operation; round-off debris only, physical amplitudes stay untouched.
inline constexpr double kPruneThreshold = 1e-12;

// Map from occupation vector to complex amplitude. Keys are ordered
// lexicographically descending, so iteration and serialization follow the
// canonical basis order. All keys share one mode count and photon total.
class SparseState {
  public:
    using TermMap = std::map<Occupation, cplx, std::greater<Occupation>>;

    SparseState() : mode_count_(0) {}
    explicit SparseState(int mode_count) : mode_count_(mode_count) {}

    // Basis state |occ>.
    static SparseState basis(const Occupation& occ) {
        SparseState s(static_cast<int>(occ.size()));
        s.terms_[occ] = 1.0;
        return s;
    }

    static SparseState vacuum(int mode_count) {
        return basis(Occupation(mode_count, 0));
    }

    int mode_count() const { return mode_count_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    int photon_total() const {
        if (terms_.empty()) return 0;
        return loqc::total_photons(terms_.begin()->first);
    }

    cplx amplitude(const Occupation& occ) const {
        auto it = terms_.find(occ);
        return it == terms_.end() ? cplx{} : it->second;
    }

    void add(const Occupation& occ, cplx amp) {
        if (static_cast<int>(occ.size()) != mode_count_)
            throw std::invalid_argument("SparseState::add: mode count mismatch");
        terms_[occ] += amp;
    }

    void scale(cplx factor) {
        for (auto& [occ, amp] : terms_) amp *= factor;
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& [occ, amp] : terms_) s += std::norm(amp);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    void normalize() {
        double n = norm();
        if (n == 0.0) throw std::runtime_error("SparseState::normalize: zero state");
        scale(1.0 / n);
    }

    void prune(double threshold = kPruneThreshold) {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (std::abs(it->second) < threshold) ? terms_.erase(it) : std::next(it);
    }

    // max |<occ|a> - <occ|b>| over the union of supports.
    double max_amplitude_diff(const SparseState& other) const {
        double dev = 0.0;
        for (const auto& [occ, amp] : terms_)
            dev = std::max(dev, std::abs(amp - other.amplitude(occ)));
        for (const auto& [occ, amp] : other.terms_)
            dev = std::max(dev, std::abs(amp - amplitude(occ)));
        return dev;
    }

  private:
    int mode_count_;
    TermMap terms_;
};

inline cplx inner_product(const SparseState& a, const SparseState& b) {
    if (a.mode_count() != b.mode_count())
        throw std::invalid_argument("inner_product: mode count mismatch");
    // Iterate over the smaller support.
    const SparseState& small = a.term_count() <= b.term_count() ? a : b;
    cplx result{};
    for (const auto& [occ, amp] : small.terms()) {
        result += std::conj(a.amplitude(occ)) * b.amplitude(occ);
    }
    return result;
}

// |a> (x) |b>, modes of b appended after modes of a.
inline SparseState tensor(const SparseState& a, const SparseState& b) {
    SparseState out(a.mode_count() + b.mode_count());
    for (const auto& [occ_a, amp_a] : a.terms())
        for (const auto& [occ_b, amp_b] : b.terms()) {
            Occupation occ = occ_a;
            occ.insert(occ.end(), occ_b.begin(), occ_b.end());
            out.add(occ, amp_a * amp_b);
        }
    return out;
}

// Relabel modes: photon count of input mode k moves to mode perm[k].
inline SparseState permute_modes(const SparseState& state, const std::vector<int>& perm) {
    int m = state.mode_count();
    if (static_cast<int>(perm.size()) != m)
        throw std::invalid_argument("permute_modes: permutation size mismatch");
    std::vector<bool> seen(m, false);
    for (int p : perm) {
        if (p < 0 || p >= m || seen[p])
            throw std::invalid_argument("permute_modes: not a bijection");
        seen[p] = true;
    }
    SparseState out(m);
    for (const auto& [occ, amp] : state.terms()) {
        Occupation moved(m, 0);
        for (int k = 0; k < m; ++k) moved[perm[k]] = occ[k];
        out.add(moved, amp);
    }
    return out;
}

// --- serialization -------------------------------------------------------
//
//   modes=M photons=N terms=K
//   n1,n2,...,nM re im        (one line per term, canonical order)

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_state(std::ostream& os, const SparseState& state) {
    os << "modes=" << state.mode_count() << " photons=" << state.photon_total()
       << " terms=" << state.term_count() << "\n";
    for (const auto& [occ, amp] : state.terms()) {
        for (size_t k = 0; k < occ.size(); ++k) os << (k ? "," : "") << occ[k];
        os << " " << format_double(amp.real()) << " " << format_double(amp.imag()) << "\n";
    }
}

inline SparseState read_state(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("read_state: missing header");
    int modes = 0, photons = 0;
    size_t terms = 0;
    if (std::sscanf(header.c_str(), "modes=%d photons=%d terms=%zu", &modes, &photons, &terms) != 3)
        throw std::runtime_error("read_state: bad header: " + header);
    SparseState state(modes);
    std::string line;
    for (size_t i = 0; i < terms; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("read_state: truncated");
        std::istringstream ls(line);
        std::string occ_field;
        ls >> occ_field;
        double re = 0, im = 0;
        if (!(ls >> re >> im)) throw std::runtime_error("read_state: bad term: " + line);
        Occupation occ;
        std::istringstream of(occ_field);
        std::string num;
        while (std::getline(of, num, ',')) occ.push_back(std::stoi(num));
        if (static_cast<int>(occ.size()) != modes)
            throw std::runtime_error("read_state: wrong occupation length: " + line);
        state.add(occ, cplx(re, im));
    }
    return state;
}

}  // namespace loqc
